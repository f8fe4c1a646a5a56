// Command-line front end: run scenario files, the built-in gallery, or a grid
// search for diachronic-consistency violations.

#include "branchdecide/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace branchdecide;

namespace {

std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact decision games under branching: preference orders, axiom checks, utility fits"};
    app.require_subcommand(1);

    bool machine = false;
    bool fail_on_violation = false;

    std::string path;
    auto* run_cmd = app.add_subcommand("run", "Execute the checks in a scenario file");
    run_cmd->add_option("file", path, "Scenario file")->required();
    run_cmd->add_flag("--machine", machine, "One JSON record per line");
    run_cmd->add_flag("--fail-on-violation", fail_on_violation, "Exit 2 when any check reports a violation");

    auto* gallery_cmd = app.add_subcommand("gallery", "Run the built-in worked examples");
    gallery_cmd->add_flag("--machine", machine, "One JSON record per line");
    gallery_cmd->add_flag("--fail-on-violation", fail_on_violation, "Exit 2 when any check reports a violation");

    auto* render_cmd = app.add_subcommand("render", "Print a scenario file in canonical form");
    render_cmd->add_option("file", path, "Scenario file")->required();

    std::string axiom = "diachronic";
    std::string kind;
    std::string rewards;
    std::string weights;
    std::uint64_t root_branches = 1;
    std::uint64_t option_branches = 1;
    auto* search_cmd = app.add_subcommand("search", "Search a scenario grid for the first violation");
    search_cmd->add_option("axiom", axiom, "Axiom to search (diachronic)")->check(CLI::IsMember({"diachronic"}));
    search_cmd->add_option("--agent", kind, "Agent kind")
        ->required()
        ->check(CLI::IsMember({"dtbr", "egalitarian", "optimist", "stoic"}));
    search_cmd->add_option("--rewards", rewards, "Comma-separated option rewards")->required();
    search_cmd->add_option("--weights", weights, "Comma-separated branch weights")->required();
    search_cmd->add_option("--root-branches", root_branches, "Maximum root branches")->required();
    search_cmd->add_option("--option-branches", option_branches, "Maximum option branches")->required();
    search_cmd->add_flag("--machine", machine, "One JSON record per line");
    search_cmd->add_flag("--fail-on-violation", fail_on_violation, "Exit 2 when a violation is found");

    CLI11_PARSE(app, argc, argv);

    const OutputMode mode = machine ? OutputMode::Machine : OutputMode::Text;
    try {
        if (*run_cmd) {
            ScenarioFile file = parse_scenario_file(read_file(path));
            return exit_code(run(file, mode, std::cout), fail_on_violation);
        }
        if (*gallery_cmd) return exit_code(run_gallery(mode, std::cout), fail_on_violation);
        if (*render_cmd) {
            std::cout << render(parse_scenario_file(read_file(path)));
            return 0;
        }
        ScenarioFile file;
        file.agents.emplace(kind, Agent{kind, parse_agent_kind(kind), {}});
        file.checks.push_back(Check{SearchCheck{kind, parse_list(rewards), parse_list(weights), root_branches,
                                                option_branches},
                                    0});
        return exit_code(run(file, mode, std::cout), fail_on_violation);
    } catch (const LoadError& e) {
        std::cerr << path << ":" << e.line() << ":" << e.column() << ": " << to_string(e.kind()) << ": "
                  << e.detail() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
