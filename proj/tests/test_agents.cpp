#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace branchdecide;
using namespace testing;

TEST_CASE("compare: worked examples") {
    const Agent dtbr = agent(AgentKind::Dtbr);
    const Agent egal = agent(AgentKind::Egalitarian);
    const Agent opt = agent(AgentKind::Optimist);
    const Agent stoic = agent(AgentKind::Stoic);

    CHECK(compare(egal, egal_a(), egal_b()) == Preference::PrefersLeft);
    CHECK(compare(egal, egal_b(), egal_a()) == Preference::PrefersRight);
    CHECK(compare(dtbr, egal_a(), egal_b()) == Preference::Indifferent);

    CHECK(compare(opt, sure_one(), b_eps(q(1, 100))) == Preference::Indifferent);
    CHECK(compare(opt, sure_one(), b_zero()) == Preference::PrefersLeft);

    for (const auto& [g, h] : {std::pair{egal_a(), egal_b()}, std::pair{sure_one(), b_zero()},
                               std::pair{sure_one(), b_eps(q(1, 100))}}) {
        CHECK(compare(stoic, g, h) == Preference::Indifferent);
    }

    CHECK(compare(egal, sure(10), game({{q(0), q(1, 2)}, {q(1), q(1, 2)}})) == Preference::PrefersLeft);
}

TEST_CASE("weakly_prefers") {
    CHECK(weakly_prefers(agent(AgentKind::Stoic), sure(0), sure(100)));
    CHECK(weakly_prefers(agent(AgentKind::Dtbr), sure(1), sure(0)));
    CHECK_FALSE(weakly_prefers(agent(AgentKind::Optimist), b_zero(), sure_one()));
}

TEST_CASE("stoic's max_reward never changes comparisons") {
    Agent rich = agent(AgentKind::Stoic);
    rich.max_reward = q(1000000);
    CHECK(compare(rich, sure(5), sure(1)) == Preference::Indifferent);
}

TEST_CASE("agent kinds parse by name") {
    CHECK(parse_agent_kind("egalitarian") == AgentKind::Egalitarian);
    CHECK_THROWS(parse_agent_kind("pessimist"));
}

// Exhaustive preorder laws: rewards {0,1,2}, weights {1/3,1/2,2/3,1},
// exact-sum filtered, up to three branches.
TEST_CASE("property: every agent is a total preorder on a small grid") {
    auto games = all_games({q(0), q(1), q(2)}, {q(1, 3), q(1, 2), q(2, 3), q(1)}, 3);
    REQUIRE(games.size() > 50);
    for (const Agent& a : all_agents()) {
        CAPTURE(a.name);
        const std::size_t n = games.size();
        std::vector<std::vector<Preference>> m(n, std::vector<Preference>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[i][j] = compare(a, games[i], games[j]);
        }
        std::size_t failures = 0;
        for (std::size_t i = 0; i < n; ++i) {
            failures += m[i][i] != Preference::Indifferent;
            for (std::size_t j = 0; j < n; ++j) {
                failures += m[i][j] != reversed(m[j][i]);
                failures += !(weakly_prefers(a, games[i], games[j]) || weakly_prefers(a, games[j], games[i]));
                if (m[i][j] == Preference::PrefersRight) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    if (m[j][k] == Preference::PrefersRight) continue;
                    failures += m[i][k] == Preference::PrefersRight;
                }
            }
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("property: invariances of each agent") {
    std::mt19937_64 rng(5);
    std::vector<Rational> rewards{q(-1), q(0), q(1), q(2), q(3)};
    const Agent dtbr = agent(AgentKind::Dtbr);
    const Agent egal = agent(AgentKind::Egalitarian);
    const Agent opt = agent(AgentKind::Optimist);
    const Agent stoic = agent(AgentKind::Stoic);
    for (int trial = 0; trial < 300; ++trial) {
        Game g = random_game(rng, rewards, 4, 6);
        Game h = random_game(rng, rewards, 4, 6);

        // permutation and equal-reward splitting
        std::vector<Branch> bs(g.branches().begin(), g.branches().end());
        std::reverse(bs.begin(), bs.end());
        Branch last = bs.back();
        bs.back().weight = last.weight / q(2);
        bs.push_back({last.reward, last.weight / q(2)});
        Game g2("g2", bs);
        CHECK(compare(dtbr, g, h) == compare(dtbr, g2, h));
        CHECK(compare(egal, g, h) == compare(egal, g2, h));

        // support-preserving reweighting: move mass between two support branches
        std::vector<Branch> rw(g.branches().begin(), g.branches().end());
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < rw.size(); ++i) {
            if (!rw[i].weight.is_zero()) support.push_back(i);
        }
        if (support.size() >= 2) {
            Rational t = rw[support[0]].weight / q(2);
            rw[support[0]].weight -= t;
            rw[support[1]].weight += t;
        }
        CHECK(compare(opt, Game("rw", rw), h) == compare(opt, g, h));

        if (expected_value(g) != expected_value(h)) CHECK(compare(egal, g, h) == compare(dtbr, g, h));
        CHECK(compare(stoic, g, h) == Preference::Indifferent);
    }
}
