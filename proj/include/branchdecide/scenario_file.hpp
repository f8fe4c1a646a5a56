#pragma once

#include "branchdecide/agent.hpp"
#include "branchdecide/axioms.hpp"
#include "branchdecide/error.hpp"
#include "branchdecide/game.hpp"
#include "branchdecide/search.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace branchdecide {

/// Error raised while loading a scenario file, positioned at a 1-based line
/// and column.
class LoadError : public Error {
public:
    LoadError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

struct ScenarioDecl {
    std::string root;
    std::vector<std::pair<std::string, std::string>> arms;

    friend bool operator==(const ScenarioDecl&, const ScenarioDecl&) = default;
};

struct CompareCheck {
    std::string agent, left, right;
    friend bool operator==(const CompareCheck&, const CompareCheck&) = default;
};

struct DiachronicCheck {
    std::string agent, scenario;
    friend bool operator==(const DiachronicCheck&, const DiachronicCheck&) = default;
};

struct ContinuityCheck {
    std::string agent, left, right;
    std::vector<Rational> alphabet;
    std::vector<Rational> deltas;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    friend bool operator==(const ContinuityCheck&, const ContinuityCheck&) = default;
};

struct DutchBookCheck {
    std::string agent;
    std::vector<std::string> games;
    friend bool operator==(const DutchBookCheck&, const DutchBookCheck&) = default;
};

struct FitCheck {
    std::string agent;
    std::vector<std::string> games;
    std::vector<Rational> alphabet;
    std::optional<std::pair<Rational, Rational>> anchors;
    friend bool operator==(const FitCheck&, const FitCheck&) = default;
};

struct SearchCheck {
    std::string agent;
    std::vector<Rational> rewards;
    std::vector<Rational> weights;
    std::uint64_t root_branches = 1;
    std::uint64_t option_branches = 1;
    friend bool operator==(const SearchCheck&, const SearchCheck&) = default;
};

using CheckBody =
    std::variant<CompareCheck, DiachronicCheck, ContinuityCheck, DutchBookCheck, FitCheck, SearchCheck>;

struct Check {
    CheckBody body;
    std::size_t line = 0;  // not part of equality

    friend bool operator==(const Check& a, const Check& b) { return a.body == b.body; }
};

std::string_view check_kind(const CheckBody& body);

/// Parsed declarations. Games, agents and scenarios are keyed by name; checks
/// keep declaration order.
struct ScenarioFile {
    std::map<std::string, Game> games;
    std::map<std::string, Agent> agents;
    std::map<std::string, ScenarioDecl> scenarios;
    std::vector<Check> checks;

    DiachronicScenario resolve_scenario(const std::string& name) const;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Parses and loads the line-oriented scenario language. Games and scenarios
/// are validated and every reference resolved; failures raise LoadError.
ScenarioFile parse_scenario_file(std::string_view text);

/// Canonical text: agents, games, scenarios sorted by name, then checks in
/// declaration order, rationals reduced.
std::string render(const ScenarioFile& file);

}  // namespace branchdecide
