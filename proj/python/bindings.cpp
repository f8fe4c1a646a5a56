#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "branchdecide/axioms.hpp"
#include "branchdecide/report.hpp"
#include "branchdecide/representation.hpp"
#include "branchdecide/search.hpp"

#include <sstream>

namespace py = pybind11;
using namespace branchdecide;

namespace {

// Accepts int, str ("3/4") or anything with numerator/denominator
// (fractions.Fraction).
Rational to_rational(const py::handle& obj) {
    if (py::isinstance<py::str>(obj)) return Rational::parse(obj.cast<std::string>());
    if (py::isinstance<py::bool_>(obj)) throw py::type_error("booleans are not rationals");
    if (py::isinstance<py::float_>(obj)) {
        throw py::type_error("floats are not accepted; use int, str or fractions.Fraction");
    }
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
        std::string num = py::str(obj.attr("numerator")).cast<std::string>();
        std::string den = py::str(obj.attr("denominator")).cast<std::string>();
        return Rational::parse(num + "/" + den);
    }
    throw py::type_error("expected int, str or fractions.Fraction");
}

py::object to_fraction(const Rational& r) {
    static auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
    return (*fraction)(r.to_string());
}

py::object json_to_py(const nlohmann::json& j) {
    static auto* loads = new py::object(py::module_::import("json").attr("loads"));
    return (*loads)(j.dump());
}

std::vector<Rational> to_rationals(const py::iterable& items) {
    std::vector<Rational> out;
    for (auto item : items) out.push_back(to_rational(item));
    return out;
}

Game make_game(const py::iterable& branches, const std::string& name) {
    std::vector<Branch> out;
    for (auto item : branches) {
        auto pair = item.cast<py::sequence>();
        if (pair.size() != 2) throw py::value_error("each branch is a (reward, weight) pair");
        out.push_back({to_rational(pair[0]), to_rational(pair[1])});
    }
    return Game(name, std::move(out));
}

Agent make_agent(const std::string& kind) { return Agent::of_kind(parse_agent_kind(kind)); }

std::vector<Game> games_from(const py::iterable& games) {
    std::vector<Game> out;
    for (auto g : games) out.push_back(g.cast<Game>());
    return out;
}

}  // namespace

PYBIND11_MODULE(_branchdecide, m) {
    m.doc() = "Exact decision games under branching";

    static PyObject* error = py::exception<Error>(m, "BranchDecideError").release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error)(std::string(e.what()));
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error, exc.ptr());
        }
    });

    py::class_<Game>(m, "Game")
        .def(py::init(&make_game), py::arg("branches"), py::arg("name") = "")
        .def_property_readonly("name", &Game::name)
        .def_property_readonly("branches",
                               [](const Game& g) {
                                   py::list out;
                                   for (const Branch& b : g.branches()) {
                                       out.append(py::make_tuple(to_fraction(b.reward), to_fraction(b.weight)));
                                   }
                                   return out;
                               })
        .def("__len__", &Game::size)
        .def("__eq__", [](const Game& a, const Game& b) { return a == b; })
        .def("__repr__", [](const Game& g) { return "Game(" + g.name() + " " + to_string(g) + ")"; });

    m.def("expected_value", [](const Game& g) { return to_fraction(expected_value(g)); });
    m.def("largest_reward", [](const Game& g) { return to_fraction(largest_reward(g)); });
    m.def("reward_range", [](const Game& g) { return to_fraction(reward_range(g)); });
    m.def(
        "flatten",
        [](const Game& root, const py::iterable& continuations) {
            return flatten(CompoundGame{root, games_from(continuations)});
        },
        py::arg("root"), py::arg("continuations"));
    m.def("combine_on_shared_event", &combine_on_shared_event);
    m.def("game_distance", [](const Game& a, const Game& b, const py::iterable& alphabet) {
        return to_fraction(game_distance(a, b, RewardAlphabet(to_rationals(alphabet))));
    });

    m.def(
        "compare",
        [](const std::string& kind, const Game& g, const Game& h) {
            return std::string(to_string(compare(make_agent(kind), g, h)));
        },
        py::arg("agent"), py::arg("left"), py::arg("right"));

    m.def(
        "check_diachronic",
        [](const std::string& kind, const Game& root, const py::iterable& arms) {
            DiachronicScenario s{"scenario", root, {}};
            for (auto arm : arms) {
                auto pair = arm.cast<py::sequence>();
                s.options.emplace_back(pair[0].cast<Game>(), pair[1].cast<Game>());
            }
            return json_to_py(to_json(check_diachronic(make_agent(kind), s)));
        },
        py::arg("agent"), py::arg("root"), py::arg("arms"));

    m.def(
        "check_continuity",
        [](const std::string& kind, const Game& g, const Game& h, const py::iterable& alphabet,
           const py::iterable& deltas, std::size_t samples, std::uint64_t seed) {
            return json_to_py(to_json(check_continuity(make_agent(kind), g, h, RewardAlphabet(to_rationals(alphabet)),
                                                       to_rationals(deltas), samples, seed)));
        },
        py::arg("agent"), py::arg("left"), py::arg("right"), py::arg("alphabet"), py::arg("deltas"),
        py::arg("samples") = 8, py::arg("seed") = 0);

    m.def(
        "analyze_dutch_book",
        [](const std::string& kind, const py::iterable& games) {
            auto gs = games_from(games);
            if (gs.empty()) throw py::value_error("at least one game is required");
            return json_to_py(to_json(analyze_dutch_book(make_agent(kind), gs, null_game_for(gs.front()))));
        },
        py::arg("agent"), py::arg("games"));

    m.def(
        "fit_utility",
        [](const std::string& kind, const py::iterable& games, const py::iterable& alphabet_items,
           const py::object& anchors) {
            RewardAlphabet alphabet(to_rationals(alphabet_items));
            PreferenceInstance p = build_instance(make_agent(kind), games_from(games), alphabet);
            UtilityFit fit = fit_utility(p);
            py::dict out;
            out["verdict"] = std::string(to_string(fit.verdict));
            out["unique"] = fit.unique;
            py::list cert;
            for (const auto& c : fit.certificate) cert.append(describe(p, c));
            out["certificate"] = cert;
            out["u"] = py::none();
            if (fit.utility) {
                auto as_dict = [&](const std::vector<Rational>& u) {
                    py::dict d;
                    for (std::size_t i = 0; i < u.size(); ++i) d[to_fraction(alphabet[i])] = to_fraction(u[i]);
                    return d;
                };
                out["u"] = as_dict(*fit.utility);
                out["verified"] = verify_fit(p, *fit.utility);
                if (!anchors.is_none()) {
                    auto pair = anchors.cast<py::sequence>();
                    out["normalized"] =
                        as_dict(*normalize_fit(fit, alphabet, to_rational(pair[0]), to_rational(pair[1])).utility);
                }
            }
            return out;
        },
        py::arg("agent"), py::arg("games"), py::arg("alphabet"), py::arg("anchors") = py::none());

    m.def(
        "find_violation",
        [](const std::string& kind, const py::iterable& rewards, const py::iterable& weights,
           std::size_t root_branches, std::size_t option_branches) {
            GridSpec spec{to_rationals(rewards), to_rationals(weights), root_branches, option_branches};
            SearchResult r = find_violation(make_agent(kind), spec, Axiom::Diachronic);
            py::dict out;
            out["space_size"] = r.space_size;
            out["hit"] = py::none();
            if (r.hit) {
                nlohmann::json hit = {{"index", r.hit->index},
                                      {"scenario", to_json(r.hit->scenario)},
                                      {"report", to_json(r.hit->report)}};
                out["hit"] = json_to_py(hit);
            }
            return out;
        },
        py::arg("agent"), py::arg("rewards"), py::arg("weights"), py::arg("root_branches"),
        py::arg("option_branches"));

    m.def(
        "run",
        [](const std::string& text) {
            std::ostringstream out;
            run(parse_scenario_file(text), OutputMode::Machine, out);
            py::list records;
            std::istringstream lines(out.str());
            for (std::string line; std::getline(lines, line);) records.append(json_to_py(nlohmann::json::parse(line)));
            return records;
        },
        py::arg("text"), "Runs a scenario file given as text and returns one dict per check.");

    m.def("render", [](const std::string& text) { return render(parse_scenario_file(text)); });

    m.def("gallery", [] {
        std::ostringstream out;
        run_gallery(OutputMode::Machine, out);
        py::list records;
        std::istringstream lines(out.str());
        for (std::string line; std::getline(lines, line);) records.append(json_to_py(nlohmann::json::parse(line)));
        return records;
    });
}
