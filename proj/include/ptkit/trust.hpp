#pragma once

// Trustworthiness potentials and the kinetic sampling-rate law.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "ptkit/promise.hpp"

namespace ptkit {

enum class Outcome { Kept, Broken };

struct AssessmentRecord {
    AgentId observer;
    std::size_t promise = 0;
    Outcome outcome = Outcome::Kept;
    std::uint64_t tick = 0;
};

// Per (observer, promise) trustworthiness potential in [0, 1].
// Unseen entries read as 0.5: with no history the observer starts from a
// 50-50 guess.
struct TrustState {
    std::map<std::pair<AgentId, std::size_t>, double> potentials;

    double get(const AgentId& observer, std::size_t promise) const;

    bool operator==(const TrustState&) const = default;
};

struct RiskPolicy {
    double rho = 1.0;   // effective mass involvement, > 0
    double risk = 0.0;  // accepted risk, >= 0, same units as V

    bool operator==(const RiskPolicy&) const = default;
};

// Exponential moving average toward the observed outcome:
// V' = (1 - lambda) * V + lambda * (Kept ? 1 : 0), lambda in (0, 1].
TrustState assess(TrustState state, const AssessmentRecord& record, double lambda);

// v = sqrt(2 * max(0, V_R - V_S - risk) / rho). Zero argument means the
// no-interaction regime: the observer needn't check at all.
double sampling_rate(double v_r, double v_s, const RiskPolicy& policy);

// Work per tick invested in sampling at rate v: 1/2 * rho * v^2.
double kinetic_cost(double v, const RiskPolicy& policy);

} // namespace ptkit
