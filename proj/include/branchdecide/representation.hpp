#pragma once

#include "branchdecide/agent.hpp"
#include "branchdecide/game.hpp"
#include "branchdecide/linear_feasibility.hpp"

#include <optional>
#include <string>
#include <vector>

namespace branchdecide {

/// Games over a fixed alphabet together with the full comparison matrix,
/// comparisons[i][j] = compare(g_i, g_j).
struct PreferenceInstance {
    RewardAlphabet alphabet;
    std::vector<Game> games;
    std::vector<std::vector<Preference>> comparisons;
};

/// Throws InconsistentPreorder when the matrix is not a total preorder
/// (diagonal, mirror symmetry, transitivity), AlphabetMismatch when a game
/// leaves the alphabet.
void validate_instance(const PreferenceInstance& p);

PreferenceInstance build_instance(const Agent& a, const std::vector<Game>& games,
                                  const RewardAlphabet& alphabet);

/// E_u(winner) - E_u(loser) >= 1, or = 0 when `strict` is false.
struct UtilityConstraint {
    std::size_t winner = 0;
    std::size_t loser = 0;
    bool strict = false;

    friend bool operator==(const UtilityConstraint&, const UtilityConstraint&) = default;
};

/// "A>B" or "A~B" using the instance's game names.
std::string describe(const PreferenceInstance& p, const UtilityConstraint& c);

/// One constraint per unordered pair i < j, in row-major order.
std::vector<UtilityConstraint> utility_constraints(const PreferenceInstance& p);

enum class FitVerdict { Feasible, Infeasible };
std::string_view to_string(FitVerdict v);

struct UtilityFit {
    FitVerdict verdict = FitVerdict::Infeasible;
    /// u per alphabet entry, aligned with the alphabet.
    std::optional<std::vector<Rational>> utility;
    /// Irreducible infeasible subset, when infeasible.
    std::vector<UtilityConstraint> certificate;
    /// Indifference constraints pin u up to a positive affine map.
    bool unique = false;
};

UtilityFit fit_utility(const PreferenceInstance& p, const linear::SolveOptions& options = {});

/// Feasibility of a constraint subset alone.
bool constraints_feasible(const PreferenceInstance& p, const std::vector<UtilityConstraint>& subset);

/// Affine rescaling with u(lo) = 0 and u(hi) = 1. Throws
/// DegenerateNormalization unless u(lo) < u(hi).
UtilityFit normalize_fit(const UtilityFit& f, const RewardAlphabet& alphabet, const Rational& lo,
                         const Rational& hi);

/// Expected utility of `g` under `u` (aligned with `alphabet`).
Rational expected_utility(const Game& g, const RewardAlphabet& alphabet, const std::vector<Rational>& u);

/// Independent check: the sign of every expected-utility difference matches
/// the recorded comparison.
bool verify_fit(const PreferenceInstance& p, const std::vector<Rational>& u);

}  // namespace branchdecide
