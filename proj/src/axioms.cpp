#include "branchdecide/axioms.hpp"

#include "branchdecide/error.hpp"

#include <algorithm>
#include <random>

namespace branchdecide {

std::string_view to_string(Axiom a) {
    return a == Axiom::Diachronic ? "diachronic" : "continuity";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Violated: return "violated";
        case Verdict::NoViolationFound: return "no_violation_found";
    }
    return "?";
}

std::string_view to_string(Clause c) { return c == Clause::I ? "i" : "ii"; }

CompoundGame DiachronicScenario::with_first() const {
    CompoundGame c{root, {}};
    c.continuations.reserve(options.size());
    for (const auto& arm : options) c.continuations.push_back(arm.first);
    return c;
}

CompoundGame DiachronicScenario::with_second() const {
    CompoundGame c{root, {}};
    c.continuations.reserve(options.size());
    for (const auto& arm : options) c.continuations.push_back(arm.second);
    return c;
}

void validate_scenario(const DiachronicScenario& s) {
    if (s.options.size() != s.root.size()) {
        throw Error(ErrorKind::InvalidScenario,
                    "scenario '" + s.name + "' has " + std::to_string(s.options.size()) +
                        " arms for " + std::to_string(s.root.size()) + " root branches");
    }
    for (std::size_t i = 0; i < s.root.size(); ++i) {
        if (s.root[i].weight.is_zero()) {
            throw Error(ErrorKind::InvalidScenario,
                        "scenario '" + s.name + "' root branch " + std::to_string(i + 1) +
                            " has zero weight and so no descendant");
        }
    }
}

namespace {

// Which clause, if any, the recorded comparisons breach.
std::optional<Clause> breached_clause(const std::vector<Preference>& descendants, Preference senior) {
    bool any_right = std::find(descendants.begin(), descendants.end(), Preference::PrefersRight) !=
                     descendants.end();
    if (any_right) return std::nullopt;
    // compare(R, L) = PrefersLeft is the same as compare(L, R) = PrefersRight.
    if (senior == Preference::PrefersRight) return Clause::I;
    bool any_left = std::find(descendants.begin(), descendants.end(), Preference::PrefersLeft) !=
                    descendants.end();
    if (any_left && senior != Preference::PrefersLeft) return Clause::II;
    return std::nullopt;
}

}  // namespace

AxiomReport check_diachronic(const Agent& a, const DiachronicScenario& s) {
    validate_scenario(s);
    std::vector<Preference> descendants;
    descendants.reserve(s.options.size());
    for (const auto& [h, h_prime] : s.options) descendants.push_back(compare(a, h, h_prime));

    AxiomReport report;
    report.axiom = Axiom::Diachronic;
    // Skip flattening when no clause can fire.
    if (std::find(descendants.begin(), descendants.end(), Preference::PrefersRight) != descendants.end()) {
        return report;
    }
    Game left = flatten(s.with_first()).renamed(s.name + ".left");
    Game right = flatten(s.with_second()).renamed(s.name + ".right");
    Preference senior = compare(a, left, right);
    if (auto clause = breached_clause(descendants, senior)) {
        report.verdict = Verdict::Violated;
        report.witness = DiachronicWitness{*clause, std::move(descendants), std::move(left),
                                           std::move(right), senior};
    }
    return report;
}

bool replay_witness(const Agent& a, const DiachronicScenario& s, const DiachronicWitness& w) {
    if (w.descendants.size() != s.options.size()) return false;
    for (std::size_t i = 0; i < s.options.size(); ++i) {
        if (compare(a, s.options[i].first, s.options[i].second) != w.descendants[i]) return false;
    }
    Game left = flatten(s.with_first());
    Game right = flatten(s.with_second());
    if (!std::ranges::equal(left.branches(), w.left.branches())) return false;
    if (!std::ranges::equal(right.branches(), w.right.branches())) return false;
    if (compare(a, w.left, w.right) != w.senior) return false;
    auto clause = breached_clause(w.descendants, w.senior);
    return clause.has_value() && *clause == w.clause;
}

namespace {

using WeightVector = std::vector<Rational>;

Rational linf(const WeightVector& a, const WeightVector& b) {
    Rational d;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, abs(a[i] - b[i]));
    return d;
}

// The vector itself, then every single transfer of min(delta, w_i) from entry i
// to entry j, in (i, j) order.
std::vector<WeightVector> extreme_perturbations(const WeightVector& w, const Rational& delta) {
    std::vector<WeightVector> out{w};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_zero()) continue;
        Rational t = std::min(delta, w[i]);
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j == i) continue;
            WeightVector p = w;
            p[i] -= t;
            p[j] += t;
            out.push_back(std::move(p));
        }
    }
    return out;
}

constexpr std::uint64_t kStepsPerDelta = 16;

// A chain of random transfers, each kept only while the result stays within
// delta of the start. std::mt19937_64's output sequence is fixed by the
// standard; raw draws are reduced by modulo so results do not depend on the
// library's distribution implementations.
WeightVector random_perturbation(const WeightVector& w, const Rational& delta, std::mt19937_64& rng) {
    WeightVector p = w;
    const std::size_t n = w.size();
    if (n < 2) return p;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t i = rng() % n;
        std::size_t j = rng() % (n - 1);
        if (j >= i) ++j;
        Rational t = delta * Rational(static_cast<std::int64_t>(rng() % kStepsPerDelta + 1)) /
                     Rational(static_cast<std::int64_t>(kStepsPerDelta));
        t = std::min(t, p[i]);
        if (t.is_zero()) continue;
        WeightVector q = p;
        q[i] -= t;
        q[j] += t;
        if (linf(q, w) <= delta) p = std::move(q);
    }
    return p;
}

}  // namespace

AxiomReport check_continuity(const Agent& a, const Game& g, const Game& h,
                             const RewardAlphabet& alphabet, const std::vector<Rational>& deltas,
                             std::size_t samples_per_delta, std::uint64_t seed) {
    if (deltas.empty()) throw Error(ErrorKind::InvalidArgument, "continuity check needs at least one delta");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        if (deltas[k].sign() <= 0) throw Error(ErrorKind::InvalidArgument, "deltas must be positive");
        if (k > 0 && deltas[k] >= deltas[k - 1]) {
            throw Error(ErrorKind::InvalidArgument, "deltas must be strictly descending");
        }
    }
    WeightVector wg = weight_vector(g, alphabet);
    WeightVector wh = weight_vector(h, alphabet);
    if (compare(a, g, h) != Preference::PrefersLeft) {
        throw Error(ErrorKind::NotStrictPreference,
                    "agent '" + a.name + "' does not strictly prefer '" + g.name() + "' to '" +
                        h.name() + "'");
    }

    AxiomReport report;
    report.axiom = Axiom::Continuity;
    std::mt19937_64 rng(seed);

    auto make_witness = [&](const Rational& delta, const WeightVector& pg, const WeightVector& ph,
                            Preference observed) {
        return ContinuityWitness{delta,
                                 game_from_weights(g.name() + "'", alphabet, pg),
                                 game_from_weights(h.name() + "'", alphabet, ph),
                                 linf(pg, wg),
                                 linf(ph, wh),
                                 observed};
    };
    auto probe = [&](const Rational& delta, const WeightVector& pg,
                     const WeightVector& ph) -> std::optional<ContinuityWitness> {
        Game gp = game_from_weights(g.name() + "'", alphabet, pg);
        Game hp = game_from_weights(h.name() + "'", alphabet, ph);
        Preference p = compare(a, gp, hp);
        if (p == Preference::PrefersLeft) return std::nullopt;
        return make_witness(delta, pg, ph, p);
    };

    bool every_delta_breaks = true;
    for (const Rational& delta : deltas) {
        std::optional<ContinuityWitness> found;
        auto eg = extreme_perturbations(wg, delta);
        auto eh = extreme_perturbations(wh, delta);
        for (std::size_t x = 0; x < eg.size() && !found; ++x) {
            for (std::size_t y = 0; y < eh.size() && !found; ++y) found = probe(delta, eg[x], eh[y]);
        }
        // Draws are consumed even after a hit so each delta sees the same stream
        // regardless of earlier outcomes.
        for (std::size_t k = 0; k < samples_per_delta; ++k) {
            WeightVector pg = random_perturbation(wg, delta, rng);
            WeightVector ph = random_perturbation(wh, delta, rng);
            if (!found) found = probe(delta, pg, ph);
        }
        if (found) {
            report.delta_witnesses.push_back(std::move(*found));
        } else {
            every_delta_breaks = false;
        }
    }
    if (every_delta_breaks) {
        report.verdict = Verdict::Violated;
        report.witness = report.delta_witnesses.back();
    } else {
        report.verdict = Verdict::NoViolationFound;
    }
    return report;
}

bool replay_witness(const Agent& a, const Game& g, const Game& h, const RewardAlphabet& alphabet,
                    const ContinuityWitness& w) {
    return game_distance(g, w.left, alphabet) == w.left_distance &&
           game_distance(h, w.right, alphabet) == w.right_distance &&
           w.left_distance <= w.delta && w.right_distance <= w.delta &&
           compare(a, w.left, w.right) == w.observed && w.observed != Preference::PrefersLeft;
}

Game null_game_for(const Game& g) {
    std::vector<Branch> branches;
    branches.reserve(g.size());
    for (const Branch& b : g.branches()) branches.push_back({Rational(0), b.weight});
    return Game("null", std::move(branches));
}

DutchBookReport analyze_dutch_book(const Agent& a, const std::vector<Game>& games, const Game& null) {
    if (games.empty()) throw Error(ErrorKind::InvalidArgument, "dutch book needs at least one game");
    for (const Branch& b : null.branches()) {
        if (!b.reward.is_zero()) {
            throw Error(ErrorKind::InvalidArgument, "null game '" + null.name() + "' pays a nonzero reward");
        }
    }
    for (const Game& g : games) {
        if (!same_event(g, null)) {
            throw Error(ErrorKind::EventMismatch,
                        "game '" + g.name() + "' does not share the null game's event");
        }
    }

    DutchBookReport report;
    bool all_strict = true;
    bool all_weak = true;
    Game combined = null;
    for (const Game& g : games) {
        Preference p = compare(a, g, null);
        report.verdicts.push_back(p);
        all_strict = all_strict && p == Preference::PrefersLeft;
        all_weak = all_weak && p != Preference::PrefersRight;
        combined = combine_on_shared_event(combined, g);
    }
    std::string name;
    for (const Game& g : games) name += (name.empty() ? "" : "&") + g.name();
    report.combined = combined.renamed(name);
    report.combined_verdict = compare(a, report.combined, null);
    report.sure_loss = largest_reward(report.combined).sign() < 0;
    bool package_accepted = report.combined_verdict != Preference::PrefersRight;
    report.exposure = all_strict && package_accepted && report.sure_loss;
    report.weak_exposure = all_weak && package_accepted && report.sure_loss;
    return report;
}

}  // namespace branchdecide
