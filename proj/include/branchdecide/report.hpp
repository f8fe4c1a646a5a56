#pragma once

#include "branchdecide/scenario_file.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace branchdecide {

enum class OutputMode { Text, Machine };

/// Result of executing one check: the structured record (stable keys
/// check_kind, inputs, verdict, witness, values) and its human rendering.
struct CheckOutcome {
    nlohmann::json record;
    std::string text;
    bool violation = false;
    bool error = false;
};

CheckOutcome execute_check(const ScenarioFile& file, const Check& check, std::size_t ordinal);

struct RunSummary {
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
};

/// Executes checks in declaration order, writing one text block or one JSON
/// line per check.
RunSummary run(const ScenarioFile& file, OutputMode mode, std::ostream& out);

/// 0 when every check executed; 1 on execution errors; 2 on violations when
/// `fail_on_violation` is set.
int exit_code(const RunSummary& summary, bool fail_on_violation);

struct GalleryFile {
    std::string_view name;
    std::string_view text;
};

/// The embedded worked-example scenario files, in run order.
const std::vector<GalleryFile>& gallery_files();

RunSummary run_gallery(OutputMode mode, std::ostream& out);

nlohmann::json to_json(const Game& g);
nlohmann::json to_json(const DiachronicScenario& s);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const DutchBookReport& r);

}  // namespace branchdecide
