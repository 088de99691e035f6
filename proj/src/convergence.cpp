#include "ptkit/convergence.hpp"

#include <algorithm>

#include "ptkit/errors.hpp"

namespace ptkit {

std::optional<std::size_t> StateSpace::index_of(const std::string& label) const {
    auto it = std::find(states.begin(), states.end(), label);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

std::size_t apply_index(const Operator& op, std::size_t q) {
    if (q >= op.table.size())
        fail("UnknownState", "state index " + std::to_string(q) + " out of range for operator '" +
                                 op.name + "'");
    return op.table[q];
}

std::string apply(const Operator& op, const std::string& state) {
    auto idx = op.space.index_of(state);
    if (!idx)
        fail("UnknownState", "'" + state + "' is not a state of operator '" + op.name + "'");
    return op.space.states.at(apply_index(op, *idx));
}

bool is_idempotent(const Operator& op) {
    for (std::size_t q = 0; q < op.table.size(); ++q) {
        const std::size_t once = apply_index(op, q);
        if (apply_index(op, once) != once) return false;
    }
    return true;
}

ConvergenceReport is_convergent(const Operator& op, std::size_t max_iter) {
    if (max_iter < op.space.size())
        fail("ParseError", "max_iter must be at least the number of states");
    ConvergenceReport report;
    report.convergent = true;
    report.orbit_lengths.resize(op.space.size());
    for (std::size_t q = 0; q < op.space.size(); ++q) {
        std::size_t x = q;
        std::optional<std::size_t> settled;
        for (std::size_t step = 0; step <= max_iter; ++step) {
            if (apply_index(op, x) == x) {
                settled = step;
                break;
            }
            x = apply_index(op, x);
        }
        report.orbit_lengths[q] = settled;
        if (!settled) report.convergent = false;
    }
    return report;
}

std::vector<std::size_t> fixed_points(const Operator& op) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < op.table.size(); ++q)
        if (op.table[q] == q) out.push_back(q);
    return out;
}

} // namespace ptkit
