#include "test_support.hpp"

#include "branchdecide/report.hpp"
#include "branchdecide/scenario_file.hpp"

#include <doctest.h>

#include <sstream>

using namespace branchdecide;
using namespace testing;

namespace {

const char* const kEgalitarian = R"(# fixture
agent dtbr kind=dtbr
agent egalitarian kind=egalitarian

game A
  branch reward=2 weight=1/2
  branch reward=3 weight=1/2
game B
  branch reward=1 weight=1/2
  branch reward=4 weight=1/2

check compare agent=egalitarian left=A right=B
check compare agent=dtbr left=A right=B
)";

struct Located {
    ErrorKind kind;
    std::size_t line;
    std::size_t column;
};

Located load_error(std::string_view text) {
    try {
        parse_scenario_file(text);
    } catch (const LoadError& e) {
        return {e.kind(), e.line(), e.column()};
    }
    FAIL("expected a LoadError");
    return {ErrorKind::ParseError, 0, 0};
}

std::string machine(const ScenarioFile& f) {
    std::ostringstream out;
    run(f, OutputMode::Machine, out);
    return out.str();
}

}  // namespace

TEST_CASE("parse: egalitarian fixture") {
    ScenarioFile f = parse_scenario_file(kEgalitarian);
    CHECK(f.games.size() == 2);
    CHECK(f.agents.size() == 2);
    REQUIRE(f.checks.size() == 2);
    CHECK(f.agents.at("egalitarian").kind == AgentKind::Egalitarian);
    CHECK(std::ranges::equal(f.games.at("A").branches(), egal_a().branches()));
    CHECK(std::get<CompareCheck>(f.checks[0].body) == CompareCheck{"egalitarian", "A", "B"});
    CHECK(f.checks[1].line == 13);
}

TEST_CASE("parse: empty and comment-only files") {
    CHECK(parse_scenario_file("") == ScenarioFile{});
    CHECK(parse_scenario_file("# nothing\n\n   # here\n").checks.empty());
}

TEST_CASE("parse: zero-weight branches and forward references") {
    ScenarioFile f = parse_scenario_file(
        "check compare agent=o left=A right=B\n"
        "agent o kind=optimist\n"
        "game A\n  branch reward=1 weight=1\n"
        "game B\n  branch reward=1 weight=0\n  branch reward=0 weight=1\n");
    CHECK(f.games.at("B").size() == 2);
}

TEST_CASE("load errors carry kind and position") {
    Located w = load_error("game g\n  branch reward=1 weight=2/1\n");
    CHECK(w.kind == ErrorKind::WeightRangeError);
    CHECK(w.line == 2);
    CHECK(w.column == 26);

    Located sum = load_error("game g\n  branch reward=1 weight=1/2\n  branch reward=0 weight=1/3\n");
    CHECK(sum.kind == ErrorKind::WeightSumError);
    CHECK(sum.line == 1);

    Located bad_number = load_error("game g\n  branch reward=0.5 weight=1\n");
    CHECK(bad_number.kind == ErrorKind::ParseError);
    CHECK(bad_number.line == 2);
    CHECK(bad_number.column == 17);

    Located unknown = load_error("agent d kind=dtbr\ncheck compare agent=d left=X right=X\n");
    CHECK(unknown.kind == ErrorKind::UnknownReference);
    CHECK(unknown.line == 2);

    Located dup = load_error("agent d kind=dtbr\nagent d kind=stoic\n");
    CHECK(dup.kind == ErrorKind::DuplicateName);
    CHECK(dup.line == 2);
    CHECK(dup.column == 7);

    Located keyword = load_error("\n\nfrobnicate x\n");
    CHECK(keyword.kind == ErrorKind::ParseError);
    CHECK(keyword.line == 3);
    CHECK(keyword.column == 1);

    Located stray = load_error("  branch reward=1 weight=1\n");
    CHECK(stray.kind == ErrorKind::ParseError);

    Located arms = load_error(
        "game r\n  branch reward=0 weight=1/2\n  branch reward=0 weight=1/2\n"
        "game s\n  branch reward=1 weight=1\n"
        "scenario x root=r\n  arm s vs s\n");
    CHECK(arms.kind == ErrorKind::InvalidScenario);
    CHECK(arms.line == 6);
}

TEST_CASE("render round trip on every gallery file") {
    REQUIRE(gallery_files().size() == 5);
    for (const auto& g : gallery_files()) {
        CAPTURE(g.name);
        ScenarioFile f = parse_scenario_file(g.text);
        std::string text = render(f);
        ScenarioFile again = parse_scenario_file(text);
        CHECK(again == f);
        CHECK(render(again) == text);
    }
}

TEST_CASE("run: text and machine output") {
    ScenarioFile f = parse_scenario_file(kEgalitarian);
    std::ostringstream text;
    RunSummary s = run(f, OutputMode::Text, text);
    CHECK(s.checks == 2);
    CHECK(s.violations == 0);
    CHECK(s.errors == 0);
    CHECK(text.str().find("PrefersLeft") != std::string::npos);

    std::string m = machine(f);
    CHECK(m == machine(parse_scenario_file(kEgalitarian)));
    std::istringstream lines(m);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        auto rec = nlohmann::json::parse(line);
        for (const char* key : {"check_kind", "inputs", "verdict", "witness", "values"}) CHECK(rec.contains(key));
        CHECK(rec["check_kind"] == "compare");
        ++n;
    }
    CHECK(n == 2);
}

TEST_CASE("run: gallery is byte-stable and exit codes follow the summary") {
    std::ostringstream a, b;
    RunSummary s = run_gallery(OutputMode::Machine, a);
    run_gallery(OutputMode::Machine, b);
    CHECK(a.str() == b.str());
    CHECK(s.errors == 0);
    CHECK(s.violations > 0);
    CHECK(exit_code(s, false) == 0);
    CHECK(exit_code(s, true) == 2);
    CHECK(exit_code(RunSummary{3, 0, 1}, true) == 1);
    CHECK(exit_code(RunSummary{3, 0, 0}, true) == 0);
}

TEST_CASE("run: execution errors become records, not crashes") {
    ScenarioFile f = parse_scenario_file(
        "agent d kind=dtbr\n"
        "game A\n  branch reward=1 weight=1\n"
        "game B\n  branch reward=0 weight=1\n"
        "check continuity agent=d left=A right=B alphabet=0,1 deltas=1/4,1/2 samples=1 seed=1\n");
    std::ostringstream out;
    RunSummary s = run(f, OutputMode::Machine, out);
    CHECK(s.errors == 1);
    auto rec = nlohmann::json::parse(out.str());
    CHECK(rec["verdict"] == "error");
}
