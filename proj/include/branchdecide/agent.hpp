#pragma once

#include "branchdecide/game.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace branchdecide {

enum class Preference { PrefersLeft, PrefersRight, Indifferent };

enum class AgentKind {
    Dtbr,         // ranks games by expected dollar value
    Egalitarian,  // expected value, then the smaller support spread
    Optimist,     // largest support reward, ties indifferent
    Stoic,        // indifferent among all games
};

std::string_view to_string(Preference p);
std::string_view to_string(AgentKind kind);
/// Throws InvalidArgument on an unknown name.
AgentKind parse_agent_kind(std::string_view name);

Preference reversed(Preference p);

struct Agent {
    std::string name;
    AgentKind kind = AgentKind::Dtbr;
    /// Stoic's "all the money in the universe". Carried for reports only;
    /// it never changes a comparison.
    std::optional<Rational> max_reward;

    static Agent of_kind(AgentKind kind) { return Agent{std::string(to_string(kind)), kind, {}}; }

    friend bool operator==(const Agent&, const Agent&) = default;
};

Preference compare(const Agent& a, const Game& g, const Game& h);

/// True unless the agent strictly prefers `h`.
bool weakly_prefers(const Agent& a, const Game& g, const Game& h);

}  // namespace branchdecide
