#pragma once

#include "branchdecide/rational.hpp"

#include <optional>
#include <vector>

namespace branchdecide::linear {

/// coeffs . x >= rhs, or coeffs . x == rhs when `equality` is set.
struct Row {
    std::vector<Rational> coeffs;
    Rational rhs;
    bool equality = false;
};

enum class VariableOrder { Forward, Reverse };
enum class ValuePick { Lower, Upper, Midpoint };

/// Tie-breaks for choosing one point of a feasible region. Any choice yields a
/// feasible point; different choices may yield different ones.
struct SolveOptions {
    VariableOrder order = VariableOrder::Forward;
    ValuePick pick = ValuePick::Lower;
};

struct Solution {
    std::vector<Rational> point;
    /// Rank of the equality rows.
    std::size_t equality_rank = 0;
};

/// Exact feasibility of a system over `num_vars` unknowns. Equalities are
/// eliminated by Gauss-Jordan, the remaining inequalities by Fourier-Motzkin,
/// and a point is recovered by back-substitution. Returns nullopt when the
/// system is infeasible.
std::optional<Solution> solve(const std::vector<Row>& rows, std::size_t num_vars,
                              const SolveOptions& options = {});

}  // namespace branchdecide::linear
