#include "branchdecide/report.hpp"

#include "branchdecide/representation.hpp"
#include "branchdecide/search.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace branchdecide {

using nlohmann::json;

namespace {

std::string str(std::string_view s) { return std::string(s); }

json rationals_json(const std::vector<Rational>& values) {
    json out = json::array();
    for (const Rational& r : values) out.push_back(r.to_string());
    return out;
}

std::string list_text(const std::vector<std::string>& items) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
    return s + "]";
}

std::string prefs_text(const std::vector<Preference>& prefs) {
    std::vector<std::string> names;
    for (Preference p : prefs) names.push_back(str(to_string(p)));
    return list_text(names);
}

json game_stats(const Game& g) {
    return {{"ev", expected_value(g).to_string()},
            {"largest_reward", largest_reward(g).to_string()},
            {"reward_range", reward_range(g).to_string()}};
}

const Agent& agent_of(const ScenarioFile& f, const std::string& name) { return f.agents.at(name); }
const Game& game_of(const ScenarioFile& f, const std::string& name) { return f.games.at(name); }

std::vector<Game> games_of(const ScenarioFile& f, const std::vector<std::string>& names) {
    std::vector<Game> out;
    for (const auto& n : names) out.push_back(game_of(f, n));
    return out;
}

json diachronic_witness_json(const DiachronicWitness& w) {
    json descendants = json::array();
    for (Preference p : w.descendants) descendants.push_back(str(to_string(p)));
    return {{"clause", str(to_string(w.clause))},
            {"descendants", descendants},
            {"left", to_json(w.left)},
            {"right", to_json(w.right)},
            {"senior", str(to_string(w.senior))}};
}

std::string diachronic_witness_text(const DiachronicWitness& w) {
    return "clause=" + str(to_string(w.clause)) + " witness=descendants=" + prefs_text(w.descendants) +
           " senior=" + str(to_string(w.senior)) + " left=" + to_string(w.left) + " right=" + to_string(w.right);
}

json continuity_witness_json(const ContinuityWitness& w) {
    return {{"delta", w.delta.to_string()},
            {"left", to_json(w.left)},
            {"right", to_json(w.right)},
            {"left_distance", w.left_distance.to_string()},
            {"right_distance", w.right_distance.to_string()},
            {"observed", str(to_string(w.observed))}};
}

std::string continuity_witness_text(const ContinuityWitness& w) {
    return "delta=" + w.delta.to_string() + " left'=" + to_string(w.left) + " right'=" + to_string(w.right) +
           " observed=" + str(to_string(w.observed));
}

CheckOutcome compare_outcome(const ScenarioFile& f, const CompareCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    const Game& g = game_of(f, c.left);
    const Game& h = game_of(f, c.right);
    Preference p = compare(a, g, h);
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent}, {"agent_kind", str(to_string(a.kind))}, {"left", c.left}, {"right", c.right}};
    o.record["verdict"] = str(to_string(p));
    o.record["values"] = {{"left", game_stats(g)}, {"right", game_stats(h)}};
    o.text = "compare " + c.agent + " " + c.left + " " + c.right + " -> " + str(to_string(p));
    return o;
}

CheckOutcome diachronic_outcome(const ScenarioFile& f, const DiachronicCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    DiachronicScenario s = f.resolve_scenario(c.scenario);
    AxiomReport r = check_diachronic(a, s);
    Game left = flatten(s.with_first());
    Game right = flatten(s.with_second());
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent}, {"agent_kind", str(to_string(a.kind))}, {"scenario", c.scenario}};
    o.record["verdict"] = str(to_string(r.verdict));
    o.record["values"] = {{"left", game_stats(left)}, {"right", game_stats(right)}};
    o.text = "diachronic " + c.agent + " " + c.scenario + " -> " + str(to_string(r.verdict));
    if (const auto* w = std::get_if<DiachronicWitness>(&r.witness)) {
        o.record["witness"] = diachronic_witness_json(*w);
        o.record["witness"]["replays"] = replay_witness(a, s, *w);
        o.text += " " + diachronic_witness_text(*w);
        o.violation = true;
    }
    return o;
}

CheckOutcome continuity_outcome(const ScenarioFile& f, const ContinuityCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    const Game& g = game_of(f, c.left);
    const Game& h = game_of(f, c.right);
    RewardAlphabet alphabet(c.alphabet);
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent},
                          {"agent_kind", str(to_string(a.kind))},
                          {"left", c.left},
                          {"right", c.right},
                          {"alphabet", rationals_json(c.alphabet)},
                          {"deltas", rationals_json(c.deltas)},
                          {"samples", c.samples},
                          {"seed", c.seed}};
    o.text = "continuity " + c.agent + " " + c.left + " " + c.right + " -> ";
    if (compare(a, g, h) != Preference::PrefersLeft) {
        // The axiom only constrains strict preferences.
        o.record["verdict"] = "satisfied";
        o.record["values"] = {{"vacuous", true}, {"reason", "NotStrictPreference"}};
        o.text += "satisfied (vacuous: no strict preference)";
        return o;
    }
    AxiomReport r = check_continuity(a, g, h, alphabet, c.deltas, c.samples, c.seed);
    o.record["verdict"] = str(to_string(r.verdict));
    json per_delta = json::array();
    std::size_t k = 0;
    std::string detail;
    for (const Rational& delta : c.deltas) {
        if (k < r.delta_witnesses.size() && r.delta_witnesses[k].delta == delta) {
            per_delta.push_back(continuity_witness_json(r.delta_witnesses[k]));
            detail += "\n  " + continuity_witness_text(r.delta_witnesses[k]);
            ++k;
        } else {
            per_delta.push_back(nullptr);
            detail += "\n  delta=" + delta.to_string() + " no breaking pair found";
        }
    }
    o.record["values"] = {{"vacuous", false}, {"per_delta", per_delta}};
    o.text += str(to_string(r.verdict));
    if (const auto* w = std::get_if<ContinuityWitness>(&r.witness)) {
        o.record["witness"] = continuity_witness_json(*w);
        o.text += " " + continuity_witness_text(*w);
        o.violation = true;
    }
    o.text += detail;
    return o;
}

CheckOutcome dutchbook_outcome(const ScenarioFile& f, const DutchBookCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    std::vector<Game> games = games_of(f, c.games);
    Game null = null_game_for(games.front());
    DutchBookReport r = analyze_dutch_book(a, games, null);
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent}, {"agent_kind", str(to_string(a.kind))}, {"games", c.games}};
    o.record["verdict"] = r.exposure ? "exposed" : "not_exposed";
    o.record["values"] = to_json(r);
    o.text = "dutchbook " + c.agent + " " + list_text(c.games) + " -> combined=" + to_string(r.combined) +
             " sure_loss=" + (r.sure_loss ? "true" : "false") + " exposure=" + (r.exposure ? "true" : "false") +
             " weak_exposure=" + (r.weak_exposure ? "true" : "false");
    for (std::size_t i = 0; i < games.size(); ++i) {
        o.text += "\n  " + c.games[i] + " vs null -> " + str(to_string(r.verdicts[i]));
    }
    o.text += "\n  combined vs null -> " + str(to_string(r.combined_verdict));
    o.violation = r.exposure;
    return o;
}

std::string utility_text(const RewardAlphabet& alphabet, const std::vector<Rational>& u) {
    std::string s = "{";
    for (std::size_t i = 0; i < u.size(); ++i) s += (i ? ", " : "") + alphabet[i].to_string() + ":" + u[i].to_string();
    return s + "}";
}

json utility_json(const RewardAlphabet& alphabet, const std::vector<Rational>& u) {
    json out = json::array();
    for (std::size_t i = 0; i < u.size(); ++i) out.push_back({alphabet[i].to_string(), u[i].to_string()});
    return out;
}

CheckOutcome fit_outcome(const ScenarioFile& f, const FitCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    RewardAlphabet alphabet(c.alphabet);
    PreferenceInstance p = build_instance(a, games_of(f, c.games), alphabet);
    UtilityFit fit = fit_utility(p);
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent},
                          {"agent_kind", str(to_string(a.kind))},
                          {"games", c.games},
                          {"alphabet", rationals_json(c.alphabet)}};
    if (c.anchors) o.record["inputs"]["anchors"] = {c.anchors->first.to_string(), c.anchors->second.to_string()};
    o.record["verdict"] = str(to_string(fit.verdict));
    o.text = "fit " + c.agent + " " + list_text(c.games) + " -> " + str(to_string(fit.verdict));
    if (fit.verdict == FitVerdict::Infeasible) {
        std::vector<std::string> cert;
        for (const auto& con : fit.certificate) cert.push_back(describe(p, con));
        o.record["witness"] = {{"certificate", cert}};
        o.text += " certificate=" + list_text(cert);
        return o;
    }
    const auto& u = *fit.utility;
    bool constant = std::all_of(u.begin(), u.end(), [&](const Rational& v) { return v == u.front(); });
    json values = {{"u", utility_json(alphabet, u)},
                   {"constant", constant},
                   {"unique", fit.unique},
                   {"verified", verify_fit(p, u)}};
    o.text += " u=" + utility_text(alphabet, u) + " constant=" + (constant ? "true" : "false") +
              " unique=" + (fit.unique ? "true" : "false");
    if (c.anchors) {
        try {
            UtilityFit n = normalize_fit(fit, alphabet, c.anchors->first, c.anchors->second);
            values["normalized"] = utility_json(alphabet, *n.utility);
            o.text += " normalized=" + utility_text(alphabet, *n.utility);
        } catch (const Error& e) {
            values["normalization_error"] = str(to_string(e.kind()));
            o.text += " normalized=" + str(to_string(e.kind()));
        }
    }
    o.record["values"] = values;
    return o;
}

CheckOutcome search_outcome(const ScenarioFile& f, const SearchCheck& c) {
    const Agent& a = agent_of(f, c.agent);
    GridSpec spec{c.rewards, c.weights, c.root_branches, c.option_branches};
    SearchResult r = find_violation(a, spec, Axiom::Diachronic);
    CheckOutcome o;
    o.record["inputs"] = {{"agent", c.agent},
                          {"agent_kind", str(to_string(a.kind))},
                          {"rewards", rationals_json(c.rewards)},
                          {"weights", rationals_json(c.weights)},
                          {"root_branches", c.root_branches},
                          {"option_branches", c.option_branches}};
    o.record["values"] = {{"space_size", r.space_size}};
    o.text = "search diachronic " + c.agent + " -> ";
    if (!r.hit) {
        o.record["verdict"] = "none";
        o.text += "none scanned=" + std::to_string(r.space_size);
        return o;
    }
    const auto& w = std::get<DiachronicWitness>(r.hit->report.witness);
    json witness = diachronic_witness_json(w);
    witness["index"] = r.hit->index;
    witness["scenario"] = to_json(r.hit->scenario);
    o.record["verdict"] = "violated";
    o.record["witness"] = witness;
    std::string arms;
    for (const auto& [h, h_prime] : r.hit->scenario.options) {
        arms += (arms.empty() ? "" : "; ") + to_string(h) + " vs " + to_string(h_prime);
    }
    o.text += "violated index=" + std::to_string(r.hit->index) + " root=" + to_string(r.hit->scenario.root) +
              " arms=[" + arms + "] " + diachronic_witness_text(w);
    o.violation = true;
    return o;
}

}  // namespace

json to_json(const Game& g) {
    json branches = json::array();
    for (const Branch& b : g.branches()) {
        branches.push_back({{"reward", b.reward.to_string()}, {"weight", b.weight.to_string()}});
    }
    return {{"name", g.name()}, {"branches", branches}};
}

json to_json(const DiachronicScenario& s) {
    json arms = json::array();
    for (const auto& [h, h_prime] : s.options) arms.push_back({to_json(h), to_json(h_prime)});
    return {{"name", s.name}, {"root", to_json(s.root)}, {"arms", arms}};
}

json to_json(const AxiomReport& r) {
    json out = {{"axiom", str(to_string(r.axiom))}, {"verdict", str(to_string(r.verdict))}, {"witness", nullptr}};
    if (const auto* w = std::get_if<DiachronicWitness>(&r.witness)) out["witness"] = diachronic_witness_json(*w);
    if (const auto* w = std::get_if<ContinuityWitness>(&r.witness)) out["witness"] = continuity_witness_json(*w);
    if (r.axiom == Axiom::Continuity) {
        json per_delta = json::array();
        for (const auto& w : r.delta_witnesses) per_delta.push_back(continuity_witness_json(w));
        out["delta_witnesses"] = per_delta;
    }
    return out;
}

json to_json(const DutchBookReport& r) {
    json verdicts = json::array();
    for (Preference p : r.verdicts) verdicts.push_back(str(to_string(p)));
    return {{"verdicts", verdicts},
            {"combined", to_json(r.combined)},
            {"combined_verdict", str(to_string(r.combined_verdict))},
            {"sure_loss", r.sure_loss},
            {"exposure", r.exposure},
            {"weak_exposure", r.weak_exposure}};
}

CheckOutcome execute_check(const ScenarioFile& file, const Check& check, std::size_t ordinal) {
    const std::string kind = str(check_kind(check.body));
    CheckOutcome o;
    try {
        o = std::visit(
            [&](const auto& body) -> CheckOutcome {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, CompareCheck>) return compare_outcome(file, body);
                if constexpr (std::is_same_v<T, DiachronicCheck>) return diachronic_outcome(file, body);
                if constexpr (std::is_same_v<T, ContinuityCheck>) return continuity_outcome(file, body);
                if constexpr (std::is_same_v<T, DutchBookCheck>) return dutchbook_outcome(file, body);
                if constexpr (std::is_same_v<T, FitCheck>) return fit_outcome(file, body);
                if constexpr (std::is_same_v<T, SearchCheck>) return search_outcome(file, body);
            },
            check.body);
    } catch (const Error& e) {
        std::string where = kind + "#" + std::to_string(ordinal) + " (line " + std::to_string(check.line) + ")";
        o = CheckOutcome{};
        o.error = true;
        o.record["verdict"] = "error";
        o.record["values"] = {{"declaration", where}, {"error", str(to_string(e.kind()))}, {"message", e.message()}};
        o.text = "error in " + where + ": " + e.what();
    }
    o.record["check_kind"] = kind;
    if (!o.record.contains("inputs")) o.record["inputs"] = json::object();
    if (!o.record.contains("witness")) o.record["witness"] = nullptr;
    if (!o.record.contains("values")) o.record["values"] = json::object();
    return o;
}

RunSummary run(const ScenarioFile& file, OutputMode mode, std::ostream& out) {
    RunSummary summary;
    for (std::size_t i = 0; i < file.checks.size(); ++i) {
        CheckOutcome o = execute_check(file, file.checks[i], i + 1);
        ++summary.checks;
        summary.violations += o.violation ? 1 : 0;
        summary.errors += o.error ? 1 : 0;
        if (mode == OutputMode::Machine) {
            out << o.record.dump() << '\n';
        } else {
            out << o.text << '\n';
        }
    }
    return summary;
}

int exit_code(const RunSummary& summary, bool fail_on_violation) {
    if (summary.errors > 0) return 1;
    if (fail_on_violation && summary.violations > 0) return 2;
    return 0;
}

RunSummary run_gallery(OutputMode mode, std::ostream& out) {
    RunSummary total;
    for (const GalleryFile& g : gallery_files()) {
        if (mode == OutputMode::Text) out << "== " << g.name << " ==\n";
        RunSummary s = run(parse_scenario_file(g.text), mode, out);
        total.checks += s.checks;
        total.violations += s.violations;
        total.errors += s.errors;
    }
    return total;
}

}  // namespace branchdecide
