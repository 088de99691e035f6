#include "ptkit/trust.hpp"

#include <cmath>

#include "ptkit/errors.hpp"

namespace ptkit {

double TrustState::get(const AgentId& observer, std::size_t promise) const {
    auto it = potentials.find({observer, promise});
    return it == potentials.end() ? 0.5 : it->second;
}

TrustState assess(TrustState state, const AssessmentRecord& record, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        fail("ParseError", "smoothing lambda must lie in (0, 1]");
    const double observed = record.outcome == Outcome::Kept ? 1.0 : 0.0;
    const double prior = state.get(record.observer, record.promise);
    state.potentials[{record.observer, record.promise}] =
        (1.0 - lambda) * prior + lambda * observed;
    return state;
}

double sampling_rate(double v_r, double v_s, const RiskPolicy& policy) {
    if (!(policy.rho > 0.0))
        fail("ParseError", "risk policy rho must be positive");
    const double gap = v_r - v_s - policy.risk;
    if (gap <= 0.0) return 0.0;
    return std::sqrt(2.0 * gap / policy.rho);
}

double kinetic_cost(double v, const RiskPolicy& policy) {
    return 0.5 * policy.rho * v * v;
}

} // namespace ptkit
