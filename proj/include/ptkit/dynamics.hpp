#pragma once

// Discrete-time simulation of promise keeping over bound channels:
// Nyquist-limited reception, trust-coupled sampling rates, and outcome
// spectrum statistics.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptkit/promise.hpp"
#include "ptkit/trust.hpp"

namespace ptkit {

enum class SimMode { Deterministic, Stochastic };

struct SimConfig {
    std::uint64_t horizon = 1;  // ticks, >= 1
    std::uint64_t seed = 0;
    SimMode mode = SimMode::Deterministic;

    bool operator==(const SimConfig&) const = default;
};

// One simulated channel over a non-inert binding. The receiver samples at a
// fixed rate, or, when fixed_rate is empty, at the trust-driven rate
// recomputed from the current potential each tick.
struct ChannelSpec {
    std::size_t offer = 0;   // offer promise index
    std::size_t accept = 0;  // matching acceptance index
    double bandwidth = 1.0;  // sender emission rate B, events/tick, > 0
    std::optional<double> fixed_rate;  // receiver sampling rate f, >= 0

    bool operator==(const ChannelSpec&) const = default;
};

struct Fidelity {
    bool faithful = false;
    double p_miss = 0.0;
};

// Faithful reception requires sampling strictly faster than twice the
// emission bandwidth. Below that, miss probability rises linearly:
// p_miss = 1 - f / (2B), clamped to [0, 1].
Fidelity nyquist_fidelity(double bandwidth, double sampling);

enum class EventType { Emitted, Sampled, Delivered, Missed, Kept, Broken };

const char* event_name(EventType t);

struct Event {
    std::uint64_t tick = 0;
    std::size_t channel = 0;
    EventType type = EventType::Emitted;
    double potential = 0.0;  // V snapshot
    double rate = 0.0;       // v snapshot

    bool operator==(const Event&) const = default;
};

// Per-channel totals accumulated tick by tick during a run.
struct ChannelSummary {
    double kinetic_work = 0.0;    // sum over ticks of 1/2 rho v^2
    double final_potential = 0.5;
    double final_rate = 0.0;

    bool operator==(const ChannelSummary&) const = default;
};

struct EventLog {
    std::vector<Event> events;
    std::vector<ChannelSpec> channels;  // for binding ids in the export
    std::vector<ChannelSummary> summaries;

    std::size_t count(EventType t) const;
    std::size_t count(EventType t, std::size_t channel) const;
    // Tab-separated export, one event per line, header included.
    std::string to_tsv() const;

    bool operator==(const EventLog&) const = default;
};

// Per-agent simulation parameters: risk policy, assessment smoothing, and
// the receiver-side calibration potential V_R.
struct TrustConfig {
    RiskPolicy policy;
    double lambda = 0.5;
    double v_r = 1.0;

    bool operator==(const TrustConfig&) const = default;
};

// Runs the per-tick loop: senders emit per bandwidth, receivers sample per
// rate, emissions are delivered or missed per nyquist_fidelity (Bernoulli in
// stochastic mode, all-or-nothing in deterministic mode), delivered
// promises are assessed Kept/Broken per the promise keep probability, and
// every assessment feeds the trust potential. Identical inputs, including
// the seed, give byte-identical logs. Errors: InertChannel.
EventLog run(const PromiseGraph& graph,
             TrustState trust,
             const std::map<AgentId, TrustConfig>& configs,
             const std::vector<ChannelSpec>& channels,
             const SimConfig& cfg);

// A menu of distinguishable outcomes with their probabilities.
struct OutcomeSpectrum {
    std::vector<std::string> outcomes;
    std::vector<double> p;

    bool operator==(const OutcomeSpectrum&) const = default;
};

// Shannon entropy in bits; zero-probability terms contribute nothing.
double spectrum_entropy(const OutcomeSpectrum& s);

// Empirical outcome frequencies over the delivered events of one channel.
// Errors: NoObservations.
OutcomeSpectrum observed_spectrum(const EventLog& log, std::size_t channel);

} // namespace ptkit
