#pragma once

// Agents, promises, bindings, and structural static analysis of the
// promise graph. Everything here is a pure function over immutable values:
// analyses are reproducible from the model document alone.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ptkit {

using AgentId = std::string;

// Promise content: a finite word set plus optional numeric attributes
// ("rate" in events per tick, "amount" as a scalar).
struct Body {
    std::set<std::string> words;
    std::map<std::string, double> attrs;

    bool covers(const Body& other) const;     // words superset
    Body intersect(const Body& other) const;  // word overlap, attrs dropped

    bool operator==(const Body&) const = default;
};

enum class Polarity { Offer, Accept };
enum class PromiseKind { Promise, Imposition };
enum class Continuity { OneShot, Continuous };

// A declared intent. The body constrains only the promiser's behaviour;
// other agents may appear in it only as declared references.
struct Promise {
    AgentId promiser;
    AgentId promisee;
    Polarity polarity = Polarity::Offer;
    Body body;
    std::vector<Body> conditions;   // offer is kept only given these
    PromiseKind kind = PromiseKind::Promise;
    Continuity continuity = Continuity::Continuous;
    std::vector<AgentId> referenced_agents;
    double keep_prob = 1.0;         // simulation parameter, see dynamics

    bool is_offer() const { return polarity == Polarity::Offer; }
    bool is_accept() const { return polarity == Polarity::Accept; }
    bool is_conditional() const { return !conditions.empty(); }

    bool operator==(const Promise&) const = default;
};

struct PromiseGraph {
    std::vector<AgentId> agents;    // unique, insertion-ordered
    std::vector<Promise> promises;  // promise identity = index

    bool has_agent(const AgentId& a) const;

    bool operator==(const PromiseGraph&) const = default;
};

// A matched offer/acceptance pair. Influence propagates only through the
// overlap of the two bodies; an empty overlap is reported inert, not dropped.
struct Binding {
    std::size_t offer = 0;
    std::size_t accept = 0;
    Body overlap;
    bool inert = false;

    bool operator==(const Binding&) const = default;
};

enum class Severity { Error, Warn, Info };

struct Finding {
    std::string code;
    Severity severity = Severity::Info;
    std::vector<std::size_t> promises;  // involved promise indices
    std::string message;

    bool operator==(const Finding&) const = default;
};

const char* severity_name(Severity s);

// Stable report order: errors first, then by first involved promise, then code.
void sort_findings(std::vector<Finding>& findings);

// Returns a copy of the graph with p appended. Rejects promises that violate
// the autonomy tenet: a body word naming another agent of the graph is only
// legal when that agent is declared in referenced_agents.
// Errors: UnknownAgent, SelfPromise, ImposedAcceptance, AutonomyViolation.
PromiseGraph add_promise(PromiseGraph graph, Promise p);

PromiseGraph make_graph(std::vector<AgentId> agents);

// One Binding per matched (+,-) pair between the same agent pair, in
// (offer index, accept index) order. Total: never fails.
std::vector<Binding> bind(const PromiseGraph& graph);

// Checks the three-leg wiring of every conditional offer +b|c from A_i to
// A_j: (1) some A_k offers +c to A_i, (2) A_i accepts -c towards A_k,
// (3) A_i signals -c to the beneficiary A_j. Findings: NoConditionSource,
// MissingConditionAcceptance, MissingConditionSignal. Conditions carried by
// impositions are reported at info severity.
std::vector<Finding> resolve_conditionals(const PromiseGraph& graph);

// Lists every imposition; absorbed when the target holds an acceptance
// towards the imposer whose body covers the imposed body, else unilateral.
std::vector<Finding> detect_impositions(const PromiseGraph& graph);

} // namespace ptkit
