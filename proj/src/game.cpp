#include "branchdecide/game.hpp"

#include "branchdecide/error.hpp"

#include <algorithm>

namespace branchdecide {

void validate_game(std::span<const Branch> branches) {
    if (branches.empty()) throw Error(ErrorKind::EmptyGame, "game has no branches");
    Rational total;
    for (const Branch& b : branches) {
        if (b.weight.sign() < 0 || b.weight > Rational(1)) {
            throw Error(ErrorKind::WeightRangeError,
                        "weight " + b.weight.to_string() + " outside [0,1]");
        }
        total += b.weight;
    }
    if (total != Rational(1)) {
        throw Error(ErrorKind::WeightSumError, "weights sum to " + total.to_string() + ", not 1");
    }
}

Game::Game() : branches_{Branch{Rational(0), Rational(1)}} {}

Game::Game(std::string name, std::vector<Branch> branches)
    : name_(std::move(name)), branches_(std::move(branches)) {
    validate_game(branches_);
}

Game Game::renamed(std::string name) const {
    Game g = *this;
    g.name_ = std::move(name);
    return g;
}

RewardAlphabet::RewardAlphabet(std::vector<Rational> rewards) : rewards_(std::move(rewards)) {
    std::sort(rewards_.begin(), rewards_.end());
    if (std::adjacent_find(rewards_.begin(), rewards_.end()) != rewards_.end()) {
        throw Error(ErrorKind::InvalidAlphabet, "alphabet contains duplicate rewards");
    }
}

bool RewardAlphabet::contains(const Rational& reward) const {
    return std::binary_search(rewards_.begin(), rewards_.end(), reward);
}

std::size_t RewardAlphabet::index_of(const Rational& reward) const {
    auto it = std::lower_bound(rewards_.begin(), rewards_.end(), reward);
    if (it == rewards_.end() || *it != reward) {
        throw Error(ErrorKind::AlphabetMismatch,
                    "reward " + reward.to_string() + " is not in the alphabet");
    }
    return static_cast<std::size_t>(it - rewards_.begin());
}

Rational expected_value(const Game& g) {
    Rational ev;
    for (const Branch& b : g.branches()) {
        if (!b.weight.is_zero()) ev += b.weight * b.reward;
    }
    return ev;
}

Rational largest_reward(const Game& g) {
    const Rational* best = nullptr;
    for (const Branch& b : g.branches()) {
        if (b.weight.is_zero()) continue;
        if (best == nullptr || b.reward > *best) best = &b.reward;
    }
    return *best;
}

Rational smallest_reward(const Game& g) {
    const Rational* best = nullptr;
    for (const Branch& b : g.branches()) {
        if (b.weight.is_zero()) continue;
        if (best == nullptr || b.reward < *best) best = &b.reward;
    }
    return *best;
}

Rational reward_range(const Game& g) { return largest_reward(g) - smallest_reward(g); }

Game flatten(const CompoundGame& c) {
    if (c.continuations.size() != c.root.size()) {
        throw Error(ErrorKind::InvalidScenario, "compound game needs one continuation per root branch");
    }
    std::vector<Branch> out;
    for (std::size_t i = 0; i < c.root.size(); ++i) {
        const Branch& head = c.root[i];
        for (const Branch& tail : c.continuations[i].branches()) {
            out.push_back({head.reward + tail.reward, head.weight * tail.weight});
        }
    }
    return Game(c.root.name() + "+", std::move(out));
}

bool same_event(const Game& g1, const Game& g2) {
    if (g1.size() != g2.size()) return false;
    for (std::size_t i = 0; i < g1.size(); ++i) {
        if (g1[i].weight != g2[i].weight) return false;
    }
    return true;
}

Game combine_on_shared_event(const Game& g1, const Game& g2) {
    if (!same_event(g1, g2)) {
        throw Error(ErrorKind::EventMismatch,
                    "games '" + g1.name() + "' and '" + g2.name() + "' do not share one event");
    }
    std::vector<Branch> out;
    out.reserve(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
        out.push_back({g1[i].reward + g2[i].reward, g1[i].weight});
    }
    return Game(g1.name() + "&" + g2.name(), std::move(out));
}

std::vector<Rational> weight_vector(const Game& g, const RewardAlphabet& alphabet) {
    std::vector<Rational> w(alphabet.size());
    for (const Branch& b : g.branches()) w[alphabet.index_of(b.reward)] += b.weight;
    return w;
}

Game game_from_weights(std::string name, const RewardAlphabet& alphabet,
                       std::span<const Rational> weights) {
    if (weights.size() != alphabet.size()) {
        throw Error(ErrorKind::AlphabetMismatch, "weight vector length differs from alphabet size");
    }
    std::vector<Branch> branches;
    branches.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) branches.push_back({alphabet[i], weights[i]});
    return Game(std::move(name), std::move(branches));
}

Rational game_distance(const Game& g1, const Game& g2, const RewardAlphabet& alphabet) {
    auto w1 = weight_vector(g1, alphabet);
    auto w2 = weight_vector(g2, alphabet);
    Rational d;
    for (std::size_t i = 0; i < w1.size(); ++i) d = std::max(d, abs(w1[i] - w2[i]));
    return d;
}

std::string to_string(const Game& g) {
    std::string s = "{";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ", ";
        s += g[i].reward.to_string() + "@" + g[i].weight.to_string();
    }
    return s + "}";
}

}  // namespace branchdecide
