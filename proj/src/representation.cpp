#include "branchdecide/representation.hpp"

#include "branchdecide/error.hpp"

#include <algorithm>

namespace branchdecide {

namespace {

// Rank used for transitivity: PrefersLeft means i ranks above j.
int sign_of(Preference p) {
    switch (p) {
        case Preference::PrefersLeft: return 1;
        case Preference::PrefersRight: return -1;
        case Preference::Indifferent: return 0;
    }
    return 0;
}

[[noreturn]] void inconsistent(const PreferenceInstance& p, std::size_t i, std::size_t j,
                               const std::string& why) {
    throw Error(ErrorKind::InconsistentPreorder,
                why + " between '" + p.games[i].name() + "' and '" + p.games[j].name() + "'");
}

std::vector<std::vector<Rational>> weight_vectors(const PreferenceInstance& p) {
    std::vector<std::vector<Rational>> out;
    out.reserve(p.games.size());
    for (const Game& g : p.games) out.push_back(weight_vector(g, p.alphabet));
    return out;
}

linear::Row to_row(const std::vector<std::vector<Rational>>& weights, const UtilityConstraint& c) {
    linear::Row row;
    row.coeffs.resize(weights[c.winner].size());
    for (std::size_t r = 0; r < row.coeffs.size(); ++r) {
        row.coeffs[r] = weights[c.winner][r] - weights[c.loser][r];
    }
    row.rhs = c.strict ? Rational(1) : Rational(0);
    row.equality = !c.strict;
    return row;
}

std::vector<linear::Row> to_rows(const PreferenceInstance& p, const std::vector<UtilityConstraint>& cs) {
    auto weights = weight_vectors(p);
    std::vector<linear::Row> rows;
    rows.reserve(cs.size());
    for (const auto& c : cs) rows.push_back(to_row(weights, c));
    return rows;
}

}  // namespace

std::string_view to_string(FitVerdict v) { return v == FitVerdict::Feasible ? "feasible" : "infeasible"; }

void validate_instance(const PreferenceInstance& p) {
    const std::size_t n = p.games.size();
    for (const Game& g : p.games) {
        for (const Branch& b : g.branches()) p.alphabet.index_of(b.reward);
    }
    if (p.comparisons.size() != n) {
        throw Error(ErrorKind::InconsistentPreorder, "comparison matrix has the wrong number of rows");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (p.comparisons[i].size() != n) {
            throw Error(ErrorKind::InconsistentPreorder, "comparison matrix is not square");
        }
        if (p.comparisons[i][i] != Preference::Indifferent) inconsistent(p, i, i, "non-indifferent diagonal");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p.comparisons[j][i] != reversed(p.comparisons[i][j])) inconsistent(p, i, j, "asymmetric entries");
        }
    }
    // i >= j and j >= k must give i >= k, with strictness carried through.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int ij = sign_of(p.comparisons[i][j]);
            if (ij < 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                int jk = sign_of(p.comparisons[j][k]);
                if (jk < 0) continue;
                int ik = sign_of(p.comparisons[i][k]);
                if (ik < 0 || (ik == 0 && (ij > 0 || jk > 0))) inconsistent(p, i, k, "intransitive ranking");
            }
        }
    }
}

PreferenceInstance build_instance(const Agent& a, const std::vector<Game>& games,
                                  const RewardAlphabet& alphabet) {
    for (const Game& g : games) {
        for (const Branch& b : g.branches()) alphabet.index_of(b.reward);
    }
    PreferenceInstance p{alphabet, games, {}};
    const std::size_t n = games.size();
    p.comparisons.assign(n, std::vector<Preference>(n, Preference::Indifferent));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            p.comparisons[i][j] = compare(a, games[i], games[j]);
            p.comparisons[j][i] = reversed(p.comparisons[i][j]);
        }
    }
    return p;
}

std::string describe(const PreferenceInstance& p, const UtilityConstraint& c) {
    return p.games[c.winner].name() + (c.strict ? ">" : "~") + p.games[c.loser].name();
}

std::vector<UtilityConstraint> utility_constraints(const PreferenceInstance& p) {
    std::vector<UtilityConstraint> out;
    for (std::size_t i = 0; i < p.games.size(); ++i) {
        for (std::size_t j = i + 1; j < p.games.size(); ++j) {
            switch (p.comparisons[i][j]) {
                case Preference::PrefersLeft: out.push_back({i, j, true}); break;
                case Preference::PrefersRight: out.push_back({j, i, true}); break;
                case Preference::Indifferent: out.push_back({i, j, false}); break;
            }
        }
    }
    return out;
}

bool constraints_feasible(const PreferenceInstance& p, const std::vector<UtilityConstraint>& subset) {
    return linear::solve(to_rows(p, subset), p.alphabet.size()).has_value();
}

UtilityFit fit_utility(const PreferenceInstance& p, const linear::SolveOptions& options) {
    validate_instance(p);
    auto constraints = utility_constraints(p);
    const std::size_t n = p.alphabet.size();

    UtilityFit fit;
    if (auto solution = linear::solve(to_rows(p, constraints), n, options)) {
        fit.verdict = FitVerdict::Feasible;
        fit.utility = std::move(solution->point);
        bool any_strict = std::any_of(constraints.begin(), constraints.end(),
                                      [](const UtilityConstraint& c) { return c.strict; });
        fit.unique = n >= 2 && any_strict && solution->equality_rank == n - 2;
        return fit;
    }

    // Greedy deletion from the back: a constraint is dropped for good when the
    // rest stays infeasible without it. The survivors are irreducible.
    std::vector<UtilityConstraint> core = constraints;
    for (std::size_t k = constraints.size(); k-- > 0;) {
        auto it = std::find(core.begin(), core.end(), constraints[k]);
        std::vector<UtilityConstraint> without = core;
        without.erase(without.begin() + (it - core.begin()));
        if (!constraints_feasible(p, without)) core = std::move(without);
    }
    fit.verdict = FitVerdict::Infeasible;
    fit.certificate = std::move(core);
    return fit;
}

UtilityFit normalize_fit(const UtilityFit& f, const RewardAlphabet& alphabet, const Rational& lo,
                         const Rational& hi) {
    if (f.verdict != FitVerdict::Feasible || !f.utility) {
        throw Error(ErrorKind::InvalidArgument, "only a feasible fit can be normalized");
    }
    if (lo == hi) throw Error(ErrorKind::DegenerateNormalization, "anchors must differ");
    const auto& u = *f.utility;
    const Rational& u_lo = u[alphabet.index_of(lo)];
    const Rational& u_hi = u[alphabet.index_of(hi)];
    if (u_lo >= u_hi) {
        throw Error(ErrorKind::DegenerateNormalization,
                    "u(" + lo.to_string() + ") = " + u_lo.to_string() + " is not below u(" +
                        hi.to_string() + ") = " + u_hi.to_string());
    }
    Rational scale = u_hi - u_lo;
    UtilityFit out = f;
    for (Rational& v : *out.utility) v = (v - u_lo) / scale;
    return out;
}

Rational expected_utility(const Game& g, const RewardAlphabet& alphabet, const std::vector<Rational>& u) {
    Rational total;
    for (const Branch& b : g.branches()) total += b.weight * u[alphabet.index_of(b.reward)];
    return total;
}

bool verify_fit(const PreferenceInstance& p, const std::vector<Rational>& u) {
    if (u.size() != p.alphabet.size()) return false;
    std::vector<Rational> eu;
    eu.reserve(p.games.size());
    for (const Game& g : p.games) eu.push_back(expected_utility(g, p.alphabet, u));
    for (std::size_t i = 0; i < p.games.size(); ++i) {
        for (std::size_t j = 0; j < p.games.size(); ++j) {
            int s = (eu[i] - eu[j]).sign();
            if (s != sign_of(p.comparisons[i][j])) return false;
        }
    }
    return true;
}

}  // namespace branchdecide
