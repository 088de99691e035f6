#pragma once

// Proxy-chain generation and audit, continuity and bootstrap checks,
// fragility analysis, and cost-growth measurement.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptkit/promise.hpp"

namespace ptkit {

struct ChainSpec {
    std::size_t n_proxies = 0;
    bool with_direct_trust = false;  // each proxy also promises the server directly

    bool operator==(const ChainSpec&) const = default;
};

// Canonical nested body expression over agent symbols, e.g. "P2(P1(S))" or
// "P1(S) ^ (P2(P3))". The head term nests outermost-first with the origin
// innermost; every further conjunct is parenthesized. A term of the form
// F(arg) stands for an offer of F conditional on arg together with the
// acceptance of arg signalled to the promisee, so the expression's nested
// argument and conjuncts are its implied conditions.
struct BodyExpr {
    std::vector<std::vector<std::string>> terms;  // each term outermost..innermost

    static std::optional<BodyExpr> try_parse(std::string_view text);
    static BodyExpr parse(const std::string& text);  // Errors: ParseError

    std::string str() const;
    std::size_t size() const;  // total count of agent symbols
    std::vector<std::string> symbols() const;  // unique, first-seen order
    std::vector<std::string> implied_conditions() const;
};

// Conditions of a promise visible to the chain audits: the explicit
// condition bodies plus the conditions implied by canonical body expressions.
std::vector<Body> effective_conditions(const Promise& p);

// Generates the assured-delivery pattern for n intermediaries between agents
// S, P1..PN and C: 3N+1 binding lines (each line is an offer plus its
// matching acceptance) covering the end-to-end conditional, the downstream
// handoffs, the upstream assurances, and the per-proxy conditional
// deliveries. with_direct_trust adds one proxy->server line per proxy and
// extends the end-to-end body with the corresponding conjuncts.
PromiseGraph gen_proxy_chain(const ChainSpec& spec);

// Number of binding lines (offer promises) in a generated chain.
std::size_t chain_lines(const PromiseGraph& graph);

// Total signalled body size: sum of body expression sizes over all offers,
// counting each binding line once.
std::size_t chain_cost(const PromiseGraph& graph);

// Continuous-operation rule: every promise must be Continuous and no
// promise may be conditioned on a OneShot promise. Findings:
// OneShotPromise, ConditionOnOneShot.
std::vector<Finding> verify_continuity(const PromiseGraph& graph);

// Builds the enablement digraph over offers (an offer enables an offer by
// its recipient when it satisfies one of its conditions, or trivially when
// the next offer is unconditional). Cycles where every participant is
// conditional are deadlocks; cycles kept alive by at least one agent acting
// unconditionally are reported as bootstrapped at info severity. Findings:
// BootstrapDeadlock (error), BootstrappedLoop (info).
std::vector<Finding> detect_bootstrap_deadlock(const PromiseGraph& graph);

struct FragilityGroup {
    std::string group;                  // redundancy group label
    std::vector<std::size_t> providers; // offer indices feeding the group
};

struct FragilityReport {
    std::size_t dependent = 0;
    bool fragile = false;          // some group has at most one provider
    std::size_t single_points = 0;
    std::vector<FragilityGroup> groups;
};

// Classifies the inputs of a conditional offer. Providers supplying the
// same redundancy group count once; by default each condition forms its own
// group, so redundant sources of one condition collapse and independent
// inputs each stand alone. Errors: NotAConditional.
FragilityReport fragility(const PromiseGraph& graph,
                          std::size_t dependent,
                          const std::map<std::size_t, std::string>& redundancy = {});

// Diffs the graph against the generated pattern for spec. minimal_trust
// additionally requires every agent pair to share at least one live binding
// (the complete-graph regime). Findings: MissingPromise (error),
// ExtraPromise (info), IncompleteGraph (warn).
std::vector<Finding> completeness_against_pattern(const PromiseGraph& graph,
                                                  const ChainSpec& spec,
                                                  bool minimal_trust = false);

// Least-squares slope of log(cost) against log(n).
double fit_growth_exponent(const std::vector<std::pair<double, double>>& n_cost);

} // namespace ptkit
