#include "branchdecide/agent.hpp"

#include "branchdecide/error.hpp"

namespace branchdecide {

std::string_view to_string(Preference p) {
    switch (p) {
        case Preference::PrefersLeft: return "PrefersLeft";
        case Preference::PrefersRight: return "PrefersRight";
        case Preference::Indifferent: return "Indifferent";
    }
    return "?";
}

std::string_view to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::Dtbr: return "dtbr";
        case AgentKind::Egalitarian: return "egalitarian";
        case AgentKind::Optimist: return "optimist";
        case AgentKind::Stoic: return "stoic";
    }
    return "?";
}

AgentKind parse_agent_kind(std::string_view name) {
    for (AgentKind k : {AgentKind::Dtbr, AgentKind::Egalitarian, AgentKind::Optimist, AgentKind::Stoic}) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown agent kind '" + std::string(name) + "'");
}

Preference reversed(Preference p) {
    switch (p) {
        case Preference::PrefersLeft: return Preference::PrefersRight;
        case Preference::PrefersRight: return Preference::PrefersLeft;
        case Preference::Indifferent: return Preference::Indifferent;
    }
    return p;
}

namespace {

// Higher statistic wins.
Preference by_greater(const Rational& left, const Rational& right) {
    if (left > right) return Preference::PrefersLeft;
    if (left < right) return Preference::PrefersRight;
    return Preference::Indifferent;
}

}  // namespace

Preference compare(const Agent& a, const Game& g, const Game& h) {
    switch (a.kind) {
        case AgentKind::Dtbr:
            return by_greater(expected_value(g), expected_value(h));
        case AgentKind::Egalitarian: {
            Preference p = by_greater(expected_value(g), expected_value(h));
            if (p != Preference::Indifferent) return p;
            return by_greater(reward_range(h), reward_range(g));
        }
        case AgentKind::Optimist:
            return by_greater(largest_reward(g), largest_reward(h));
        case AgentKind::Stoic:
            return Preference::Indifferent;
    }
    return Preference::Indifferent;
}

bool weakly_prefers(const Agent& a, const Game& g, const Game& h) {
    return compare(a, g, h) != Preference::PrefersRight;
}

}  // namespace branchdecide
