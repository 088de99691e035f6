#pragma once

// Shared builders for the test suites.

#include <initializer_list>
#include <string>
#include <vector>

#include "ptkit/promise.hpp"

namespace ptkit::testing {

inline Body body(std::initializer_list<std::string> words) {
    Body b;
    for (const auto& w : words) b.words.insert(w);
    return b;
}

inline Promise offer(AgentId from, AgentId to, Body b,
                     std::vector<Body> conditions = {}) {
    Promise p;
    p.promiser = std::move(from);
    p.promisee = std::move(to);
    p.polarity = Polarity::Offer;
    p.body = std::move(b);
    p.conditions = std::move(conditions);
    return p;
}

inline Promise accept(AgentId from, AgentId to, Body b) {
    Promise p;
    p.promiser = std::move(from);
    p.promisee = std::move(to);
    p.polarity = Polarity::Accept;
    p.body = std::move(b);
    return p;
}

inline PromiseGraph graph_of(std::vector<AgentId> agents, std::vector<Promise> promises) {
    PromiseGraph g = make_graph(std::move(agents));
    for (auto& p : promises) g = add_promise(std::move(g), std::move(p));
    return g;
}

inline bool has_finding(const std::vector<Finding>& fs, const std::string& code) {
    for (const auto& f : fs)
        if (f.code == code) return true;
    return false;
}

inline std::size_t count_findings(const std::vector<Finding>& fs, const std::string& code) {
    std::size_t n = 0;
    for (const auto& f : fs)
        if (f.code == code) ++n;
    return n;
}

} // namespace ptkit::testing
