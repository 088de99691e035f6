#pragma once

// Fixed-point verification of promise operators on finite state spaces.
// Operators are explicit lookup tables, so idempotence and convergence are
// decidable by exhaustive iteration.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ptkit {

inline constexpr std::size_t kMaxStates = 4096;

struct StateSpace {
    std::vector<std::string> states;  // nonempty, distinct labels

    std::size_t size() const { return states.size(); }
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool operator==(const StateSpace&) const = default;
};

// A total map Q -> Q realizing one promise.
struct Operator {
    std::string name;
    StateSpace space;
    std::vector<std::size_t> table;  // image index per state index

    bool operator==(const Operator&) const = default;
};

// Table lookup by label. Errors: UnknownState.
std::string apply(const Operator& op, const std::string& state);

std::size_t apply_index(const Operator& op, std::size_t q);

// op(op(q)) == op(q) for every state, checked exhaustively.
bool is_idempotent(const Operator& op);

struct ConvergenceReport {
    bool convergent = false;
    // Steps until each state's orbit first reaches a fixed point; empty when
    // the orbit never settles within max_iter.
    std::vector<std::optional<std::size_t>> orbit_lengths;
};

// True iff every orbit q, op(q), op^2(q), ... reaches a fixed point within
// max_iter steps. max_iter must be at least |Q| (an orbit on a finite space
// needs no more steps than states).
ConvergenceReport is_convergent(const Operator& op, std::size_t max_iter);

inline ConvergenceReport is_convergent(const Operator& op) {
    return is_convergent(op, op.space.size());
}

std::vector<std::size_t> fixed_points(const Operator& op);

} // namespace ptkit
