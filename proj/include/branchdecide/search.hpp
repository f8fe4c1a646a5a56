#pragma once

#include "branchdecide/agent.hpp"
#include "branchdecide/axioms.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace branchdecide {

/// Grid of small diachronic scenarios. Root rewards come from
/// `root_reward_grid` (fixed at $0 by default), option rewards from
/// `reward_grid`; every branch weight comes from `weight_grid`, and only
/// weight tuples summing exactly to 1 are kept.
struct GridSpec {
    std::vector<Rational> reward_grid;
    std::vector<Rational> weight_grid;
    std::size_t max_root_branches = 1;
    std::size_t max_option_branches = 1;
    std::vector<Rational> root_reward_grid{Rational(0)};
};

/// Cap on the enumerated scenario count. Reads BRANCHDECIDE_GRID_CAP, falling
/// back to 50 million.
std::uint64_t default_grid_cap();

/// Index-addressable enumeration of every scenario on a grid.
///
/// Order: root games by branch count, then by their (reward, weight) index
/// tuples read left to right; within a root game the arms
/// (H_1, H_1', H_2, H_2', ...) count as a mixed-radix number over the option
/// games, H_1 most significant. Option games are ordered like root games.
class ScenarioSpace {
public:
    /// Throws InvalidArgument on a malformed grid and GridTooLarge when the
    /// scenario count exceeds `cap`.
    explicit ScenarioSpace(const GridSpec& spec, std::uint64_t cap = default_grid_cap());

    std::uint64_t size() const noexcept { return total_; }
    DiachronicScenario at(std::uint64_t index) const;

    const std::vector<Game>& root_games() const noexcept { return roots_; }
    const std::vector<Game>& option_games() const noexcept { return options_; }

private:
    std::vector<Game> roots_;
    std::vector<Game> options_;
    std::vector<std::uint64_t> root_offsets_;  // first scenario index per root game
    std::uint64_t total_ = 0;
};

/// Recursive enumeration in the same order as ScenarioSpace, without index
/// arithmetic. The callback returns false to stop early.
void for_each_scenario(const GridSpec& spec, const std::function<bool(const DiachronicScenario&)>& visit,
                       std::uint64_t cap = default_grid_cap());

struct SearchHit {
    std::uint64_t index = 0;
    DiachronicScenario scenario;
    AxiomReport report;
};

struct SearchResult {
    std::optional<SearchHit> hit;
    std::uint64_t space_size = 0;
};

/// First violating scenario in enumeration order. `threads` = 0 picks the
/// hardware concurrency; the answer does not depend on it. Only the
/// diachronic axiom is searchable.
SearchResult find_violation(const Agent& a, const GridSpec& spec, Axiom axiom, unsigned threads = 0,
                            std::uint64_t cap = default_grid_cap());

/// Self-audit: walks the whole grid with for_each_scenario and counts
/// violations.
std::uint64_t count_violations(const Agent& a, const GridSpec& spec, std::uint64_t cap = default_grid_cap());

}  // namespace branchdecide
