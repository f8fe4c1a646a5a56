#include "branchdecide/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace branchdecide {

LoadError::LoadError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
    : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

std::string_view check_kind(const CheckBody& body) {
    struct Visitor {
        std::string_view operator()(const CompareCheck&) const { return "compare"; }
        std::string_view operator()(const DiachronicCheck&) const { return "diachronic"; }
        std::string_view operator()(const ContinuityCheck&) const { return "continuity"; }
        std::string_view operator()(const DutchBookCheck&) const { return "dutchbook"; }
        std::string_view operator()(const FitCheck&) const { return "fit"; }
        std::string_view operator()(const SearchCheck&) const { return "search"; }
    };
    return std::visit(Visitor{}, body);
}

DiachronicScenario ScenarioFile::resolve_scenario(const std::string& name) const {
    auto it = scenarios.find(name);
    if (it == scenarios.end()) throw Error(ErrorKind::UnknownReference, "no scenario named '" + name + "'");
    DiachronicScenario s{name, games.at(it->second.root), {}};
    for (const auto& [h, h_prime] : it->second.arms) s.options.emplace_back(games.at(h), games.at(h_prime));
    return s;
}

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

bool valid_name(std::string_view name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '\'';
    });
}

// Where a name was referenced, for deferred resolution.
struct Reference {
    ErrorKind missing_kind = ErrorKind::UnknownReference;
    std::string kind;  // "game", "agent", "scenario"
    std::string name;
    std::size_t line;
    std::size_t column;
};

class Parser {
public:
    ScenarioFile parse(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            line_ = line_no;
            statement(tokenize(text.substr(pos, end - pos)));
            pos = end + 1;
        }
        close_block();
        resolve();
        return std::move(file_);
    }

private:
    struct Field {
        std::string value;
        std::size_t column;
    };
    using Fields = std::map<std::string, Field>;

    [[noreturn]] void fail(ErrorKind kind, std::size_t column, const std::string& message) const {
        throw LoadError(kind, line_, column, message);
    }

    void statement(const std::vector<Token>& tokens) {
        if (tokens.empty()) return;
        const std::string& keyword = tokens[0].text;
        if (keyword == "branch") return branch(tokens);
        if (keyword == "arm") return arm(tokens);
        close_block();
        if (keyword == "game") return game(tokens);
        if (keyword == "agent") return agent(tokens);
        if (keyword == "scenario") return scenario(tokens);
        if (keyword == "check") return check(tokens);
        if (keyword == "search") return search(tokens);
        fail(ErrorKind::ParseError, tokens[0].column, "unknown keyword '" + keyword + "'");
    }

    // key=value tokens from `first` on; only `allowed` keys are accepted.
    Fields fields(const std::vector<Token>& tokens, std::size_t first, std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required) {
        Fields out;
        for (std::size_t i = first; i < tokens.size(); ++i) {
            const Token& t = tokens[i];
            auto eq = t.text.find('=');
            if (eq == std::string::npos || eq == 0) fail(ErrorKind::ParseError, t.column, "expected key=value, got '" + t.text + "'");
            std::string key = t.text.substr(0, eq);
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(ErrorKind::ParseError, t.column, "unexpected key '" + key + "'");
            }
            if (!out.emplace(key, Field{t.text.substr(eq + 1), t.column + eq + 1}).second) {
                fail(ErrorKind::ParseError, t.column, "key '" + key + "' given twice");
            }
        }
        for (std::string_view key : required) {
            if (!out.contains(std::string(key))) {
                std::size_t col = tokens.empty() ? 1 : tokens.back().column + tokens.back().text.size();
                fail(ErrorKind::ParseError, col, "missing required key '" + std::string(key) + "'");
            }
        }
        return out;
    }

    Rational rational(const Field& f) const {
        try {
            return Rational::parse(f.value);
        } catch (const Error& e) {
            fail(ErrorKind::ParseError, f.column, "bad rational '" + f.value + "'");
        }
    }

    std::vector<std::string> split(const Field& f) const {
        std::vector<std::string> out;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = f.value.find(',', start);
            std::string item = f.value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (item.empty()) fail(ErrorKind::ParseError, f.column + start, "empty list element");
            out.push_back(std::move(item));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    std::vector<Rational> rationals(const Field& f) const {
        std::vector<Rational> out;
        std::size_t offset = 0;
        for (const std::string& item : split(f)) {
            out.push_back(rational(Field{item, f.column + offset}));
            offset += item.size() + 1;
        }
        return out;
    }

    std::uint64_t integer(const Field& f) const {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(f.value.data(), f.value.data() + f.value.size(), v);
        if (ec != std::errc{} || ptr != f.value.data() + f.value.size()) {
            fail(ErrorKind::ParseError, f.column, "expected a non-negative integer, got '" + f.value + "'");
        }
        return v;
    }

    std::string name(const Token& t) const {
        if (!valid_name(t.text)) fail(ErrorKind::ParseError, t.column, "invalid name '" + t.text + "'");
        return t.text;
    }

    void ref(const std::string& kind, const Field& f) { refs_.push_back({ErrorKind::UnknownReference, kind, f.value, line_, f.column}); }

    void claim(std::set<std::string>& seen, const std::string& kind, const Token& t) {
        if (!seen.insert(t.text).second) {
            fail(ErrorKind::DuplicateName, t.column, kind + " '" + t.text + "' is already declared");
        }
    }

    void game(const std::vector<Token>& tokens) {
        if (tokens.size() != 2) fail(ErrorKind::ParseError, tokens[0].column, "expected 'game <name>'");
        claim(game_names_, "game", tokens[1]);
        open_game_ = OpenGame{name(tokens[1]), {}, line_, tokens[0].column};
    }

    void branch(const std::vector<Token>& tokens) {
        if (!open_game_) fail(ErrorKind::ParseError, tokens[0].column, "'branch' outside a game block");
        Fields f = fields(tokens, 1, {"reward", "weight"}, {"reward", "weight"});
        Branch b{rational(f.at("reward")), rational(f.at("weight"))};
        if (b.weight.sign() < 0 || b.weight > Rational(1)) {
            fail(ErrorKind::WeightRangeError, f.at("weight").column,
                 "weight " + b.weight.to_string() + " outside [0,1] in game '" + open_game_->name + "'");
        }
        open_game_->branches.push_back(std::move(b));
    }

    void agent(const std::vector<Token>& tokens) {
        if (tokens.size() < 2) fail(ErrorKind::ParseError, tokens[0].column, "expected 'agent <name> kind=<kind>'");
        claim(agent_names_, "agent", tokens[1]);
        Fields f = fields(tokens, 2, {"kind", "max_reward"}, {"kind"});
        Agent a;
        a.name = name(tokens[1]);
        try {
            a.kind = parse_agent_kind(f.at("kind").value);
        } catch (const Error&) {
            fail(ErrorKind::ParseError, f.at("kind").column, "unknown agent kind '" + f.at("kind").value + "'");
        }
        if (f.contains("max_reward")) a.max_reward = rational(f.at("max_reward"));
        file_.agents.emplace(a.name, std::move(a));
    }

    void scenario(const std::vector<Token>& tokens) {
        if (tokens.size() < 2) fail(ErrorKind::ParseError, tokens[0].column, "expected 'scenario <name> root=<game>'");
        claim(scenario_names_, "scenario", tokens[1]);
        Fields f = fields(tokens, 2, {"root"}, {"root"});
        ref("game", f.at("root"));
        open_scenario_ = OpenScenario{name(tokens[1]), ScenarioDecl{f.at("root").value, {}}, line_, tokens[0].column};
    }

    void arm(const std::vector<Token>& tokens) {
        if (!open_scenario_) fail(ErrorKind::ParseError, tokens[0].column, "'arm' outside a scenario block");
        if (tokens.size() != 4 || tokens[2].text != "vs") {
            fail(ErrorKind::ParseError, tokens[0].column, "expected 'arm <game> vs <game>'");
        }
        ref("game", Field{tokens[1].text, tokens[1].column});
        ref("game", Field{tokens[3].text, tokens[3].column});
        open_scenario_->decl.arms.emplace_back(tokens[1].text, tokens[3].text);
    }

    void check(const std::vector<Token>& tokens) {
        if (tokens.size() < 2) fail(ErrorKind::ParseError, tokens[0].column, "expected a check kind");
        const std::string& kind = tokens[1].text;
        Check c;
        c.line = line_;
        if (kind == "compare") {
            Fields f = fields(tokens, 2, {"agent", "left", "right"}, {"agent", "left", "right"});
            ref("agent", f.at("agent"));
            ref("game", f.at("left"));
            ref("game", f.at("right"));
            c.body = CompareCheck{f.at("agent").value, f.at("left").value, f.at("right").value};
        } else if (kind == "diachronic") {
            Fields f = fields(tokens, 2, {"agent", "scenario"}, {"agent", "scenario"});
            ref("agent", f.at("agent"));
            ref("scenario", f.at("scenario"));
            c.body = DiachronicCheck{f.at("agent").value, f.at("scenario").value};
        } else if (kind == "continuity") {
            Fields f = fields(tokens, 2, {"agent", "left", "right", "alphabet", "deltas", "samples", "seed"},
                              {"agent", "left", "right", "alphabet", "deltas", "samples", "seed"});
            ref("agent", f.at("agent"));
            ref("game", f.at("left"));
            ref("game", f.at("right"));
            c.body = ContinuityCheck{f.at("agent").value,        f.at("left").value,        f.at("right").value,
                                     rationals(f.at("alphabet")), rationals(f.at("deltas")), integer(f.at("samples")),
                                     integer(f.at("seed"))};
        } else if (kind == "dutchbook") {
            Fields f = fields(tokens, 2, {"agent", "games"}, {"agent", "games"});
            ref("agent", f.at("agent"));
            DutchBookCheck d{f.at("agent").value, split(f.at("games"))};
            for (const auto& g : d.games) ref("game", Field{g, f.at("games").column});
            c.body = std::move(d);
        } else if (kind == "fit") {
            Fields f = fields(tokens, 2, {"agent", "games", "alphabet", "anchors"}, {"agent", "games", "alphabet"});
            ref("agent", f.at("agent"));
            FitCheck fit{f.at("agent").value, split(f.at("games")), rationals(f.at("alphabet")), std::nullopt};
            for (const auto& g : fit.games) ref("game", Field{g, f.at("games").column});
            if (f.contains("anchors")) {
                auto anchors = rationals(f.at("anchors"));
                if (anchors.size() != 2) fail(ErrorKind::ParseError, f.at("anchors").column, "anchors needs exactly two rewards");
                fit.anchors = std::make_pair(anchors[0], anchors[1]);
            }
            c.body = std::move(fit);
        } else {
            fail(ErrorKind::ParseError, tokens[1].column, "unknown check kind '" + kind + "'");
        }
        file_.checks.push_back(std::move(c));
    }

    void search(const std::vector<Token>& tokens) {
        if (tokens.size() < 2 || tokens[1].text != "diachronic") {
            fail(ErrorKind::ParseError, tokens.size() < 2 ? tokens[0].column : tokens[1].column,
                 "only 'search diachronic' is supported");
        }
        Fields f = fields(tokens, 2, {"agent", "rewards", "weights", "root_branches", "option_branches"},
                          {"agent", "rewards", "weights", "root_branches", "option_branches"});
        ref("agent", f.at("agent"));
        Check c;
        c.line = line_;
        c.body = SearchCheck{f.at("agent").value, rationals(f.at("rewards")), rationals(f.at("weights")),
                             integer(f.at("root_branches")), integer(f.at("option_branches"))};
        file_.checks.push_back(std::move(c));
    }

    void close_block() {
        if (open_game_) {
            OpenGame g = std::move(*open_game_);
            open_game_.reset();
            try {
                file_.games.emplace(g.name, Game(g.name, std::move(g.branches)));
            } catch (const Error& e) {
                throw LoadError(e.kind(), g.line, g.column, e.message() + " in game '" + g.name + "'");
            }
        }
        if (open_scenario_) {
            OpenScenario s = std::move(*open_scenario_);
            open_scenario_.reset();
            pending_scenarios_.push_back({s.name, s.line, s.column});
            file_.scenarios.emplace(std::move(s.name), std::move(s.decl));
        }
    }

    void resolve() {
        for (const Reference& r : refs_) {
            bool found = (r.kind == "game" && file_.games.contains(r.name)) ||
                         (r.kind == "agent" && file_.agents.contains(r.name)) ||
                         (r.kind == "scenario" && file_.scenarios.contains(r.name));
            if (!found) throw LoadError(r.missing_kind, r.line, r.column, "unknown " + r.kind + " '" + r.name + "'");
        }
        for (const auto& p : pending_scenarios_) {
            try {
                validate_scenario(file_.resolve_scenario(p.name));
            } catch (const Error& e) {
                throw LoadError(e.kind(), p.line, p.column, e.message());
            }
        }
    }

    struct OpenGame {
        std::string name;
        std::vector<Branch> branches;
        std::size_t line;
        std::size_t column;
    };
    struct OpenScenario {
        std::string name;
        ScenarioDecl decl;
        std::size_t line;
        std::size_t column;
    };
    struct Pending {
        std::string name;
        std::size_t line;
        std::size_t column;
    };

    ScenarioFile file_;
    std::size_t line_ = 0;
    std::optional<OpenGame> open_game_;
    std::optional<OpenScenario> open_scenario_;
    std::vector<Reference> refs_;
    std::vector<Pending> pending_scenarios_;
    std::set<std::string> game_names_, agent_names_, scenario_names_;
};

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

std::string join(const std::vector<Rational>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i].to_string();
    return out;
}

}  // namespace

ScenarioFile parse_scenario_file(std::string_view text) { return Parser{}.parse(text); }

std::string render(const ScenarioFile& file) {
    std::ostringstream out;
    for (const auto& [name, a] : file.agents) {
        out << "agent " << name << " kind=" << to_string(a.kind);
        if (a.max_reward) out << " max_reward=" << *a.max_reward;
        out << '\n';
    }
    for (const auto& [name, g] : file.games) {
        out << "game " << name << '\n';
        for (const Branch& b : g.branches()) out << "  branch reward=" << b.reward << " weight=" << b.weight << '\n';
    }
    for (const auto& [name, s] : file.scenarios) {
        out << "scenario " << name << " root=" << s.root << '\n';
        for (const auto& [h, h_prime] : s.arms) out << "  arm " << h << " vs " << h_prime << '\n';
    }
    struct Visitor {
        std::ostream& out;
        void operator()(const CompareCheck& c) const {
            out << "check compare agent=" << c.agent << " left=" << c.left << " right=" << c.right;
        }
        void operator()(const DiachronicCheck& c) const {
            out << "check diachronic agent=" << c.agent << " scenario=" << c.scenario;
        }
        void operator()(const ContinuityCheck& c) const {
            out << "check continuity agent=" << c.agent << " left=" << c.left << " right=" << c.right
                << " alphabet=" << join(c.alphabet) << " deltas=" << join(c.deltas) << " samples=" << c.samples
                << " seed=" << c.seed;
        }
        void operator()(const DutchBookCheck& c) const {
            out << "check dutchbook agent=" << c.agent << " games=" << join(c.games);
        }
        void operator()(const FitCheck& c) const {
            out << "check fit agent=" << c.agent << " games=" << join(c.games) << " alphabet=" << join(c.alphabet);
            if (c.anchors) out << " anchors=" << c.anchors->first << "," << c.anchors->second;
        }
        void operator()(const SearchCheck& c) const {
            out << "search diachronic agent=" << c.agent << " rewards=" << join(c.rewards)
                << " weights=" << join(c.weights) << " root_branches=" << c.root_branches
                << " option_branches=" << c.option_branches;
        }
    };
    for (const Check& c : file.checks) {
        std::visit(Visitor{out}, c.body);
        out << '\n';
    }
    return out.str();
}

}  // namespace branchdecide
