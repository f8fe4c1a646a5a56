"""Exact decision games under branching: preference orders, axiom checks and
expected-utility fits, backed by a C++ core."""

from ._branchdecide import (
    BranchDecideError,
    Game,
    analyze_dutch_book,
    check_continuity,
    check_diachronic,
    combine_on_shared_event,
    compare,
    expected_value,
    find_violation,
    fit_utility,
    flatten,
    gallery,
    game_distance,
    largest_reward,
    render,
    reward_range,
    run,
)

__all__ = [
    "BranchDecideError",
    "Game",
    "analyze_dutch_book",
    "check_continuity",
    "check_diachronic",
    "combine_on_shared_event",
    "compare",
    "expected_value",
    "find_violation",
    "fit_utility",
    "flatten",
    "gallery",
    "game_distance",
    "largest_reward",
    "render",
    "reward_range",
    "run",
]
