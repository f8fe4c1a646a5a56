#pragma once

#include "branchdecide/agent.hpp"
#include "branchdecide/game.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace branchdecide {

/// A root game after which the descendant on branch i chooses between
/// options[i].first (H_i) and options[i].second (H_i').
struct DiachronicScenario {
    std::string name;
    Game root;
    std::vector<std::pair<Game, Game>> options;

    /// Continuation lists for the two compounds.
    CompoundGame with_first() const;
    CompoundGame with_second() const;
};

/// Throws InvalidScenario on an arm count mismatch or a zero-weight root branch.
void validate_scenario(const DiachronicScenario& s);

enum class Axiom { Diachronic, Continuity };
enum class Verdict { Satisfied, Violated, NoViolationFound };
enum class Clause { I, II };

std::string_view to_string(Axiom a);
std::string_view to_string(Verdict v);
std::string_view to_string(Clause c);

struct DiachronicWitness {
    Clause clause = Clause::I;
    /// compare(agent, H_i, H_i') per root branch.
    std::vector<Preference> descendants;
    Game left;   // root followed by every H_i
    Game right;  // root followed by every H_i'
    /// compare(agent, left, right).
    Preference senior = Preference::Indifferent;
};

struct ContinuityWitness {
    Rational delta;
    Game left;
    Game right;
    Rational left_distance;
    Rational right_distance;
    Preference observed = Preference::Indifferent;
};

struct AxiomReport {
    Axiom axiom = Axiom::Diachronic;
    Verdict verdict = Verdict::Satisfied;
    std::variant<std::monostate, DiachronicWitness, ContinuityWitness> witness;
    /// Continuity only: the first breaking pair found at each tested delta.
    std::vector<ContinuityWitness> delta_witnesses;
};

AxiomReport check_diachronic(const Agent& a, const DiachronicScenario& s);

/// Re-executes every comparison a diachronic witness cites and confirms the
/// recorded clause is breached.
bool replay_witness(const Agent& a, const DiachronicScenario& s, const DiachronicWitness& w);

/// Falsification-only continuity check around a strict preference g > h.
/// Each delta (positive, strictly descending) is probed with every
/// single-transfer extreme perturbation of g and h plus `samples_per_delta`
/// seeded random pairs.
AxiomReport check_continuity(const Agent& a, const Game& g, const Game& h,
                             const RewardAlphabet& alphabet, const std::vector<Rational>& deltas,
                             std::size_t samples_per_delta, std::uint64_t seed);

bool replay_witness(const Agent& a, const Game& g, const Game& h, const RewardAlphabet& alphabet,
                    const ContinuityWitness& w);

struct DutchBookReport {
    std::vector<Preference> verdicts;  // compare(agent, game_k, null)
    Game combined;
    Preference combined_verdict = Preference::Indifferent;
    bool sure_loss = false;
    /// Every game strictly accepted, the package weakly accepted, and a sure loss.
    bool exposure = false;
    /// As exposure but with weak acceptance of each game.
    bool weak_exposure = false;
};

DutchBookReport analyze_dutch_book(const Agent& a, const std::vector<Game>& games, const Game& null);

/// All-zero game on the event of `g`.
Game null_game_for(const Game& g);

}  // namespace branchdecide
