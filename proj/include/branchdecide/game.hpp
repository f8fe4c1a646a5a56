#pragma once

#include "branchdecide/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace branchdecide {

/// One outcome of a branching event: a dollar reward and its quantum weight.
struct Branch {
    Rational reward;
    Rational weight;

    friend bool operator==(const Branch&, const Branch&) = default;
};

/// Throws WeightRangeError, WeightSumError or EmptyGame when the branch list
/// is not a valid game.
void validate_game(std::span<const Branch> branches);

/// A finite, normalized list of branches. Zero-weight branches are kept; the
/// support (weight > 0) is never empty. Immutable once built.
class Game {
public:
    /// Certain $0.
    Game();
    Game(std::string name, std::vector<Branch> branches);

    const std::string& name() const noexcept { return name_; }
    std::span<const Branch> branches() const noexcept { return branches_; }
    std::size_t size() const noexcept { return branches_.size(); }
    const Branch& operator[](std::size_t i) const { return branches_[i]; }

    Game renamed(std::string name) const;

    friend bool operator==(const Game&, const Game&) = default;

private:
    std::string name_;
    std::vector<Branch> branches_;
};

/// Root game followed by one continuation per root branch.
struct CompoundGame {
    Game root;
    std::vector<Game> continuations;
};

/// Strictly increasing list of distinct rewards; the coordinate system for
/// weight vectors.
class RewardAlphabet {
public:
    RewardAlphabet() = default;
    /// Sorts the input; duplicates raise InvalidAlphabet.
    explicit RewardAlphabet(std::vector<Rational> rewards);

    std::span<const Rational> rewards() const noexcept { return rewards_; }
    std::size_t size() const noexcept { return rewards_.size(); }
    const Rational& operator[](std::size_t i) const { return rewards_[i]; }

    /// Index of `reward`; throws AlphabetMismatch when absent.
    std::size_t index_of(const Rational& reward) const;
    bool contains(const Rational& reward) const;

    friend bool operator==(const RewardAlphabet&, const RewardAlphabet&) = default;

private:
    std::vector<Rational> rewards_;
};

Rational expected_value(const Game& g);

/// Largest reward on the support.
Rational largest_reward(const Game& g);
Rational smallest_reward(const Game& g);

/// max - min over the support.
Rational reward_range(const Game& g);

/// Rewards add along each path, weights multiply.
Game flatten(const CompoundGame& c);

/// Branchwise sum of two games resolved by the same event.
Game combine_on_shared_event(const Game& g1, const Game& g2);

bool same_event(const Game& g1, const Game& g2);

/// Weight mass per alphabet entry.
std::vector<Rational> weight_vector(const Game& g, const RewardAlphabet& alphabet);

/// Game with one branch per alphabet entry, zero entries included.
Game game_from_weights(std::string name, const RewardAlphabet& alphabet,
                       std::span<const Rational> weights);

/// L-infinity distance between the weight vectors of two games.
Rational game_distance(const Game& g1, const Game& g2, const RewardAlphabet& alphabet);

std::string to_string(const Game& g);

}  // namespace branchdecide
