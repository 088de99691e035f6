#include "ptkit/promise.hpp"

#include <algorithm>
#include <sstream>

#include "ptkit/errors.hpp"

namespace ptkit {

namespace {

std::string words_text(const Body& b) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& w : b.words) {
        if (!first) out << ',';
        out << w;
        first = false;
    }
    out << '}';
    return out.str();
}

} // namespace

bool Body::covers(const Body& other) const {
    return std::includes(words.begin(), words.end(),
                         other.words.begin(), other.words.end());
}

Body Body::intersect(const Body& other) const {
    Body out;
    std::set_intersection(words.begin(), words.end(),
                          other.words.begin(), other.words.end(),
                          std::inserter(out.words, out.words.end()));
    return out;
}

bool PromiseGraph::has_agent(const AgentId& a) const {
    return std::find(agents.begin(), agents.end(), a) != agents.end();
}

const char* severity_name(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warn: return "warn";
        case Severity::Info: return "info";
    }
    return "info";
}

void sort_findings(std::vector<Finding>& findings) {
    std::stable_sort(findings.begin(), findings.end(),
                     [](const Finding& a, const Finding& b) {
                         if (a.severity != b.severity) return a.severity < b.severity;
                         const auto ap = a.promises.empty() ? SIZE_MAX : a.promises.front();
                         const auto bp = b.promises.empty() ? SIZE_MAX : b.promises.front();
                         if (ap != bp) return ap < bp;
                         return a.code < b.code;
                     });
}

PromiseGraph make_graph(std::vector<AgentId> agents) {
    PromiseGraph g;
    for (auto& a : agents) {
        if (a.empty()) fail("ParseError", "agent names must be nonempty");
        if (g.has_agent(a)) fail("ParseError", "duplicate agent '" + a + "'");
        g.agents.push_back(std::move(a));
    }
    return g;
}

PromiseGraph add_promise(PromiseGraph graph, Promise p) {
    if (!graph.has_agent(p.promiser))
        fail("UnknownAgent", "promiser '" + p.promiser + "' is not in the model");
    if (!graph.has_agent(p.promisee))
        fail("UnknownAgent", "promisee '" + p.promisee + "' is not in the model");
    if (p.promiser == p.promisee)
        fail("SelfPromise", "'" + p.promiser + "' cannot promise itself");
    if (p.is_accept() && p.kind == PromiseKind::Imposition)
        fail("ImposedAcceptance", "acceptance cannot be imposed");
    for (const auto& r : p.referenced_agents)
        if (!graph.has_agent(r))
            fail("UnknownAgent", "referenced agent '" + r + "' is not in the model");

    // Autonomy tenet: no agent may promise anything on behalf of another.
    // A body word that names a different agent is read as binding that
    // agent's behaviour unless it is declared as a passive reference.
    for (const auto& word : p.body.words) {
        if (word == p.promiser) continue;
        if (!graph.has_agent(word)) continue;
        const bool declared =
            std::find(p.referenced_agents.begin(), p.referenced_agents.end(), word) !=
            p.referenced_agents.end();
        if (!declared)
            fail("AutonomyViolation",
                 "'" + p.promiser + "' binds agent '" + word +
                 "' in its body without declaring it as a reference");
    }

    graph.promises.push_back(std::move(p));
    return graph;
}

std::vector<Binding> bind(const PromiseGraph& graph) {
    std::vector<Binding> out;
    const auto& ps = graph.promises;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!ps[i].is_offer()) continue;
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (!ps[j].is_accept()) continue;
            if (ps[i].promiser != ps[j].promisee || ps[i].promisee != ps[j].promiser)
                continue;
            Binding b;
            b.offer = i;
            b.accept = j;
            b.overlap = ps[i].body.intersect(ps[j].body);
            b.inert = b.overlap.words.empty();
            out.push_back(std::move(b));
        }
    }
    return out;
}

std::vector<Finding> resolve_conditionals(const PromiseGraph& graph) {
    std::vector<Finding> out;
    const auto& ps = graph.promises;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const Promise& p = ps[i];
        if (!p.is_offer() || p.conditions.empty()) continue;
        // Conditions on an imposition are informational only.
        const Severity sev =
            p.kind == PromiseKind::Imposition ? Severity::Info : Severity::Error;
        for (const Body& cond : p.conditions) {
            // Leg 1: some other agent offers the condition to the promiser.
            std::vector<std::size_t> providers;
            for (std::size_t k = 0; k < ps.size(); ++k) {
                if (k == i || !ps[k].is_offer()) continue;
                if (ps[k].promisee == p.promiser && ps[k].body.covers(cond))
                    providers.push_back(k);
            }
            if (providers.empty()) {
                out.push_back({"NoConditionSource", sev, {i},
                               "condition " + words_text(cond) + " of '" + p.promiser +
                               "' has no provider anywhere"});
                continue;
            }
            // Leg 2: the promiser accepts the condition from a provider.
            bool accepted = false;
            for (std::size_t k = 0; k < ps.size() && !accepted; ++k) {
                if (!ps[k].is_accept() || ps[k].promiser != p.promiser) continue;
                if (!ps[k].body.covers(cond)) continue;
                for (std::size_t prov : providers)
                    if (ps[k].promisee == ps[prov].promiser) { accepted = true; break; }
            }
            if (!accepted) {
                out.push_back({"MissingConditionAcceptance", sev, {i},
                               "'" + p.promiser + "' never accepts condition " +
                               words_text(cond) + " from its provider"});
                continue;
            }
            // Leg 3: the acceptance is signalled to the beneficiary.
            bool signalled = false;
            for (std::size_t k = 0; k < ps.size() && !signalled; ++k) {
                if (!ps[k].is_accept() || ps[k].promiser != p.promiser) continue;
                if (ps[k].promisee == p.promisee && ps[k].body.covers(cond))
                    signalled = true;
            }
            if (!signalled)
                out.push_back({"MissingConditionSignal", sev, {i},
                               "'" + p.promiser + "' does not signal acceptance of " +
                               words_text(cond) + " to beneficiary '" + p.promisee + "'"});
        }
    }
    return out;
}

std::vector<Finding> detect_impositions(const PromiseGraph& graph) {
    std::vector<Finding> out;
    const auto& ps = graph.promises;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const Promise& p = ps[i];
        if (p.kind != PromiseKind::Imposition) continue;
        std::size_t absorber = SIZE_MAX;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            if (!ps[k].is_accept()) continue;
            if (ps[k].promiser == p.promisee && ps[k].promisee == p.promiser &&
                ps[k].body.covers(p.body)) {
                absorber = k;
                break;
            }
        }
        if (absorber != SIZE_MAX) {
            out.push_back({"ImpositionAbsorbed", Severity::Info, {i, absorber},
                           "imposition " + words_text(p.body) + " on '" + p.promisee +
                           "' is absorbed by its accepted policy"});
        } else {
            out.push_back({"ImpositionUnilateral", Severity::Warn, {i},
                           "imposition " + words_text(p.body) + " on '" + p.promisee +
                           "' has no matching acceptance and cannot be relied on"});
        }
    }
    return out;
}

} // namespace ptkit
