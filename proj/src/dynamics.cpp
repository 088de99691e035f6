#include "ptkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "ptkit/errors.hpp"

namespace ptkit {

namespace {

// Engine output mapped to [0,1) without std::uniform_real_distribution,
// which is not specified bit-exactly across standard libraries.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string format_rate(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

struct ChannelState {
    double emit_acc = 0.0;
    double sample_acc = 0.0;
    double keep_acc = 0.0;  // deterministic keep fraction carry
};

} // namespace

Fidelity nyquist_fidelity(double bandwidth, double sampling) {
    if (!(bandwidth > 0.0)) fail("ParseError", "bandwidth must be positive");
    if (sampling < 0.0) fail("ParseError", "sampling rate must be nonnegative");
    Fidelity out;
    out.faithful = sampling > 2.0 * bandwidth;
    out.p_miss = out.faithful ? 0.0
                              : std::clamp(1.0 - sampling / (2.0 * bandwidth), 0.0, 1.0);
    return out;
}

const char* event_name(EventType t) {
    switch (t) {
        case EventType::Emitted: return "Emitted";
        case EventType::Sampled: return "Sampled";
        case EventType::Delivered: return "Delivered";
        case EventType::Missed: return "Missed";
        case EventType::Kept: return "Kept";
        case EventType::Broken: return "Broken";
    }
    return "Emitted";
}

std::size_t EventLog::count(EventType t) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(),
                      [t](const Event& e) { return e.type == t; }));
}

std::size_t EventLog::count(EventType t, std::size_t channel) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [&](const Event& e) {
            return e.type == t && e.channel == channel;
        }));
}

std::string EventLog::to_tsv() const {
    std::ostringstream out;
    out << "tick\tbinding\tevent\tV\tv\n";
    for (const Event& e : events) {
        const auto& ch = channels.at(e.channel);
        out << e.tick << '\t' << ch.offer << ':' << ch.accept << '\t'
            << event_name(e.type) << '\t' << format_rate(e.potential) << '\t'
            << format_rate(e.rate) << '\n';
    }
    return out.str();
}

EventLog run(const PromiseGraph& graph,
             TrustState trust,
             const std::map<AgentId, TrustConfig>& configs,
             const std::vector<ChannelSpec>& channels,
             const SimConfig& cfg) {
    if (cfg.horizon < 1) fail("ParseError", "horizon must be at least 1");

    const auto bindings = bind(graph);
    for (const ChannelSpec& ch : channels) {
        auto it = std::find_if(bindings.begin(), bindings.end(), [&](const Binding& b) {
            return b.offer == ch.offer && b.accept == ch.accept;
        });
        if (it == bindings.end())
            fail("UnresolvedReference",
                 "channel " + std::to_string(ch.offer) + ":" + std::to_string(ch.accept) +
                     " does not reference a binding");
        if (it->inert)
            fail("InertChannel",
                 "channel " + std::to_string(ch.offer) + ":" + std::to_string(ch.accept) +
                     " has an empty overlap; no influence can propagate");
        if (!(ch.bandwidth > 0.0)) fail("ParseError", "channel bandwidth must be positive");
        if (ch.fixed_rate && *ch.fixed_rate < 0.0)
            fail("ParseError", "channel sampling rate must be nonnegative");
    }

    EventLog log;
    log.channels = channels;
    log.summaries.resize(channels.size());
    std::vector<ChannelState> states(channels.size());
    std::mt19937_64 rng(cfg.seed);

    const auto config_for = [&](const AgentId& agent) -> TrustConfig {
        auto it = configs.find(agent);
        return it == configs.end() ? TrustConfig{} : it->second;
    };

    for (std::uint64_t tick = 0; tick < cfg.horizon; ++tick) {
        for (std::size_t ci = 0; ci < channels.size(); ++ci) {
            const ChannelSpec& ch = channels[ci];
            ChannelState& st = states[ci];
            const Promise& offer = graph.promises.at(ch.offer);
            const AgentId& receiver = graph.promises.at(ch.accept).promiser;
            const TrustConfig tc = config_for(receiver);

            double potential = trust.get(receiver, ch.offer);
            const double rate = ch.fixed_rate
                                    ? *ch.fixed_rate
                                    : sampling_rate(tc.v_r, potential, tc.policy);
            log.summaries[ci].kinetic_work += kinetic_cost(rate, tc.policy);

            // Receiver attention first, then the sender's emissions.
            st.sample_acc += rate;
            while (st.sample_acc >= 1.0) {
                st.sample_acc -= 1.0;
                log.events.push_back({tick, ci, EventType::Sampled, potential, rate});
            }

            const Fidelity fid = nyquist_fidelity(ch.bandwidth, rate);
            st.emit_acc += ch.bandwidth;
            while (st.emit_acc >= 1.0) {
                st.emit_acc -= 1.0;
                log.events.push_back({tick, ci, EventType::Emitted, potential, rate});

                bool delivered;
                if (cfg.mode == SimMode::Deterministic) {
                    delivered = fid.faithful;
                } else {
                    delivered = next_unit(rng) >= fid.p_miss;
                }
                if (!delivered) {
                    log.events.push_back({tick, ci, EventType::Missed, potential, rate});
                    continue;
                }
                log.events.push_back({tick, ci, EventType::Delivered, potential, rate});

                bool kept;
                if (cfg.mode == SimMode::Deterministic) {
                    st.keep_acc += offer.keep_prob;
                    kept = st.keep_acc >= 1.0;
                    if (kept) st.keep_acc -= 1.0;
                } else {
                    kept = next_unit(rng) < offer.keep_prob;
                }
                trust = assess(trust,
                               {receiver, ch.offer, kept ? Outcome::Kept : Outcome::Broken, tick},
                               tc.lambda);
                potential = trust.get(receiver, ch.offer);
                log.events.push_back({tick, ci,
                                      kept ? EventType::Kept : EventType::Broken,
                                      potential, rate});
            }
            log.summaries[ci].final_potential = potential;
            log.summaries[ci].final_rate = rate;
        }
    }
    return log;
}

double spectrum_entropy(const OutcomeSpectrum& s) {
    if (s.p.size() != s.outcomes.size())
        fail("ParseError", "spectrum labels and probabilities disagree in length");
    double total = 0.0;
    for (double p : s.p) {
        if (p < 0.0) fail("ParseError", "spectrum probabilities must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail("ParseError", "spectrum probabilities must sum to 1");
    // Kahan summation keeps the uniform case exact to ~1e-15 even at N=1024.
    double sum = 0.0, carry = 0.0;
    for (double p : s.p) {
        if (p <= 0.0) continue;
        const double term = -p * std::log2(p) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return sum;
}

OutcomeSpectrum observed_spectrum(const EventLog& log, std::size_t channel) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const Event& e : log.events) {
        if (e.channel != channel) continue;
        if (e.type != EventType::Kept && e.type != EventType::Broken) continue;
        ++counts[event_name(e.type)];
        ++total;
    }
    if (total == 0)
        fail("NoObservations",
             "channel " + std::to_string(channel) + " has no delivered outcomes");
    OutcomeSpectrum out;
    for (const auto& [label, n] : counts) {
        out.outcomes.push_back(label);
        out.p.push_back(static_cast<double>(n) / static_cast<double>(total));
    }
    return out;
}

} // namespace ptkit
