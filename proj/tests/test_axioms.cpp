#include "test_support.hpp"

#include "branchdecide/error.hpp"
#include "branchdecide/report.hpp"
#include "branchdecide/search.hpp"

#include <doctest.h>

#include <algorithm>

using namespace branchdecide;
using namespace testing;

namespace {

DiachronicScenario optimist_scenario() {
    return {"scenario1", fair_zero_root(), {{sure(2, "H1"), sure(1, "H1p")}, {sure(3, "H2"), sure(3, "H2p")}}};
}

DiachronicScenario egalitarian_witness() {
    Game split = game({{q(3), q(1, 2)}, {q(5), q(1, 2)}}, "split35");
    return {"grandchildren", fair_zero_root(), {{sure(4, "sure4"), split}, {split, split}}};
}

ErrorKind error_kind(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("diachronic: optimist breaches clause (ii)") {
    const Agent opt = agent(AgentKind::Optimist);
    auto s = optimist_scenario();
    AxiomReport r = check_diachronic(opt, s);
    REQUIRE(r.verdict == Verdict::Violated);
    const auto& w = std::get<DiachronicWitness>(r.witness);
    CHECK(w.clause == Clause::II);
    CHECK(w.descendants == std::vector{Preference::PrefersLeft, Preference::Indifferent});
    CHECK(w.senior == Preference::Indifferent);
    CHECK(largest_reward(w.left) == q(3));
    CHECK(largest_reward(w.right) == q(3));
    CHECK(replay_witness(opt, s, w));
}

TEST_CASE("diachronic: dtbr and stoic are consistent on the optimist scenario") {
    auto s = optimist_scenario();
    CHECK(check_diachronic(agent(AgentKind::Dtbr), s).verdict == Verdict::Satisfied);
    CHECK(expected_value(flatten(s.with_first())) == q(5, 2));
    CHECK(expected_value(flatten(s.with_second())) == q(2));
    CHECK(check_diachronic(agent(AgentKind::Stoic), s).verdict == Verdict::Satisfied);
}

TEST_CASE("diachronic: egalitarian witness breaches clause (ii)") {
    const Agent egal = agent(AgentKind::Egalitarian);
    auto s = egalitarian_witness();
    AxiomReport r = check_diachronic(egal, s);
    REQUIRE(r.verdict == Verdict::Violated);
    const auto& w = std::get<DiachronicWitness>(r.witness);
    CHECK(w.clause == Clause::II);
    CHECK(expected_value(w.left) == q(4));
    CHECK(expected_value(w.right) == q(4));
    CHECK(reward_range(w.left) == q(2));
    CHECK(reward_range(w.right) == q(2));
    CHECK(replay_witness(egal, s, w));

    // A tampered witness does not replay.
    DiachronicWitness forged = w;
    forged.senior = Preference::PrefersLeft;
    CHECK_FALSE(replay_witness(egal, s, forged));
    forged = w;
    forged.clause = Clause::I;
    CHECK_FALSE(replay_witness(egal, s, forged));
}

TEST_CASE("diachronic: scenario validation") {
    auto s = optimist_scenario();
    s.options.pop_back();
    CHECK(error_kind([&] { check_diachronic(agent(AgentKind::Dtbr), s); }) == ErrorKind::InvalidScenario);

    DiachronicScenario zero{"z", b_zero(), {{sure(1), sure(0)}, {sure(1), sure(0)}}};
    CHECK(error_kind([&] { check_diachronic(agent(AgentKind::Dtbr), zero); }) == ErrorKind::InvalidScenario);
}

TEST_CASE("property: dtbr and stoic never breach on a small grid") {
    GridSpec spec{{q(0), q(1), q(2)}, {q(1, 2), q(1)}, 2, 2};
    std::size_t scanned = 0;
    for_each_scenario(spec, [&](const DiachronicScenario& s) {
        ++scanned;
        CHECK(check_diachronic(agent(AgentKind::Dtbr), s).verdict == Verdict::Satisfied);
        CHECK(check_diachronic(agent(AgentKind::Stoic), s).verdict == Verdict::Satisfied);
        return true;
    });
    CHECK(scanned == ScenarioSpace(spec).size());
}

TEST_CASE("property: violations replay and survive a uniform root shift") {
    GridSpec spec{{q(0), q(1), q(3)}, {q(1, 2), q(1)}, 2, 2};
    std::size_t violations = 0;
    for (const Agent& a : {agent(AgentKind::Optimist), agent(AgentKind::Egalitarian)}) {
        for_each_scenario(spec, [&](const DiachronicScenario& s) {
            AxiomReport r = check_diachronic(a, s);
            DiachronicScenario shifted = s;
            std::vector<Branch> root(s.root.branches().begin(), s.root.branches().end());
            for (Branch& b : root) b.reward += q(7, 2);
            shifted.root = Game("shifted", root);
            CHECK(check_diachronic(a, shifted).verdict == r.verdict);
            if (r.verdict == Verdict::Violated) {
                ++violations;
                CHECK(replay_witness(a, s, std::get<DiachronicWitness>(r.witness)));
            }
            return true;
        });
    }
    CHECK(violations > 0);
}

TEST_CASE("continuity: optimist on (A, B_0) breaks at every delta") {
    RewardAlphabet ab({q(0), q(1)});
    std::vector<Rational> deltas{q(1, 2), q(1, 4), q(1, 8), q(1, 16)};
    const Agent opt = agent(AgentKind::Optimist);
    AxiomReport r = check_continuity(opt, sure_one(), b_zero(), ab, deltas, 8, 7);
    REQUIRE(r.verdict == Verdict::Violated);
    REQUIRE(r.delta_witnesses.size() == deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const auto& w = r.delta_witnesses[k];
        CHECK(w.delta == deltas[k]);
        // the right game is exactly B_delta
        CHECK(weight_vector(w.right, ab) == weight_vector(b_eps(deltas[k]), ab));
        CHECK(w.observed == Preference::Indifferent);
        CHECK(replay_witness(opt, sure_one(), b_zero(), ab, w));
    }
    CHECK(std::get<ContinuityWitness>(r.witness).delta == q(1, 16));
}

TEST_CASE("continuity: dtbr keeps its strict preference under small perturbations") {
    RewardAlphabet ab({q(0), q(1)});
    const Agent dtbr = agent(AgentKind::Dtbr);
    AxiomReport r = check_continuity(dtbr, sure_one(), b_zero(), ab, {q(1, 4), q(1, 8), q(1, 16)}, 500, 3);
    CHECK(r.verdict == Verdict::NoViolationFound);
    CHECK(r.delta_witnesses.empty());

    // At delta = 1/2 the EV gap of 1 can close completely.
    AxiomReport wide = check_continuity(dtbr, sure_one(), b_zero(), ab, {q(1, 2)}, 0, 3);
    CHECK(wide.verdict == Verdict::Violated);
    CHECK(std::get<ContinuityWitness>(wide.witness).observed == Preference::Indifferent);
}

TEST_CASE("continuity: sampled perturbations stay within delta") {
    // Reported pairs are rechecked against the oracle distance.
    RewardAlphabet ab({q(0), q(1), q(2), q(3)});
    Game g = game({{q(3), q(1, 2)}, {q(2), q(1, 2)}}, "g");
    Game h = game({{q(0), q(1, 2)}, {q(1), q(1, 2)}}, "h");
    AxiomReport r = check_continuity(agent(AgentKind::Dtbr), g, h, ab, {q(1), q(3, 4), q(1, 2)}, 200, 17);
    CHECK_FALSE(r.delta_witnesses.empty());
    for (const auto& w : r.delta_witnesses) {
        CHECK(big(game_distance(g, w.left, ab)) <= big(w.delta));
        CHECK(big(game_distance(h, w.right, ab)) <= big(w.delta));
        CHECK(oracle_linf(g, w.left) == big(w.left_distance));
    }
}

TEST_CASE("continuity: errors and determinism") {
    RewardAlphabet ab({q(0), q(1)});
    CHECK(error_kind([&] {
              check_continuity(agent(AgentKind::Stoic), sure_one(), b_zero(), ab, {q(1, 2)}, 4, 1);
          }) == ErrorKind::NotStrictPreference);
    CHECK(error_kind([&] {
              check_continuity(agent(AgentKind::Dtbr), b_zero(), sure_one(), ab, {q(1, 2)}, 4, 1);
          }) == ErrorKind::NotStrictPreference);
    CHECK(error_kind([&] {
              check_continuity(agent(AgentKind::Dtbr), sure_one(), b_zero(), ab, {q(1, 4), q(1, 2)}, 4, 1);
          }) == ErrorKind::InvalidArgument);

    RewardAlphabet wide({q(0), q(1), q(2), q(5)});
    Game g = game({{q(5), q(1, 3)}, {q(2), q(2, 3)}});
    Game h = game({{q(0), q(1, 2)}, {q(1), q(1, 2)}});
    auto once = to_json(check_continuity(agent(AgentKind::Optimist), g, h, wide, {q(1, 2), q(1, 5)}, 50, 42)).dump();
    auto twice = to_json(check_continuity(agent(AgentKind::Optimist), g, h, wide, {q(1, 2), q(1, 5)}, 50, 42)).dump();
    CHECK(once == twice);
}

TEST_CASE("dutch book: coin-toss footnote") {
    Game heads = game({{q(1), q(1, 2)}, {q(-2), q(1, 2)}}, "heads");
    Game tails = game({{q(-2), q(1, 2)}, {q(1), q(1, 2)}}, "tails");
    Game null = null_game_for(heads);

    DutchBookReport opt = analyze_dutch_book(agent(AgentKind::Optimist), {heads, tails}, null);
    CHECK(opt.verdicts == std::vector{Preference::PrefersLeft, Preference::PrefersLeft});
    CHECK(opt.combined[0].reward == q(-1));
    CHECK(opt.combined[1].reward == q(-1));
    CHECK(opt.sure_loss);
    CHECK(opt.combined_verdict == Preference::PrefersRight);
    CHECK_FALSE(opt.exposure);

    DutchBookReport dtbr = analyze_dutch_book(agent(AgentKind::Dtbr), {heads}, null);
    CHECK(dtbr.verdicts == std::vector{Preference::PrefersRight});

    DutchBookReport stoic = analyze_dutch_book(agent(AgentKind::Stoic), {heads, tails}, null);
    CHECK(stoic.verdicts == std::vector{Preference::Indifferent, Preference::Indifferent});
    CHECK(stoic.combined_verdict == Preference::Indifferent);
    CHECK(stoic.sure_loss);
    CHECK_FALSE(stoic.exposure);
    CHECK(stoic.weak_exposure);

    CHECK(error_kind([&] { analyze_dutch_book(agent(AgentKind::Dtbr), {heads, b_eps(q(1, 3))}, null); }) ==
          ErrorKind::EventMismatch);
}

TEST_CASE("property: dutch book flags ignore game order") {
    std::mt19937_64 rng(31);
    std::vector<Rational> rewards{q(-3), q(-1), q(1), q(2)};
    Game event = game({{q(0), q(1, 3)}, {q(0), q(1, 3)}, {q(0), q(1, 3)}}, "null");
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Game> games;
        for (int k = 0; k < 3; ++k) {
            std::vector<Branch> bs;
            for (const Branch& b : event.branches()) bs.push_back({rewards[rng() % rewards.size()], b.weight});
            games.emplace_back("g" + std::to_string(k), bs);
        }
        for (const Agent& a : all_agents()) {
            DutchBookReport base = analyze_dutch_book(a, games, event);
            std::vector<Game> perm = games;
            std::reverse(perm.begin(), perm.end());
            DutchBookReport other = analyze_dutch_book(a, perm, event);
            CHECK(base.sure_loss == other.sure_loss);
            CHECK(base.exposure == other.exposure);
            CHECK(base.weak_exposure == other.weak_exposure);
        }
    }
}
