#include "branchdecide/linear_feasibility.hpp"

#include <map>

namespace branchdecide::linear {

namespace {

bool all_zero(const std::vector<Rational>& coeffs) {
    for (const Rational& c : coeffs) {
        if (!c.is_zero()) return false;
    }
    return true;
}

// Replaces `var` in `row` using pivot row `x_var = rhs - sum(others)`, where
// the pivot row is normalized to coefficient 1 on `var`.
void substitute(Row& row, const Row& pivot, std::size_t var) {
    Rational c = row.coeffs[var];
    if (c.is_zero()) return;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
        if (!pivot.coeffs[j].is_zero()) row.coeffs[j] -= c * pivot.coeffs[j];
    }
    row.rhs -= c * pivot.rhs;
}

// Drops tautologies, scales each row so its first nonzero coefficient has
// magnitude 1, and keeps the tightest bound per direction. Returns false on a
// constant contradiction.
bool simplify(std::vector<Row>& rows) {
    std::map<std::vector<Rational>, Rational> tightest;
    for (Row& r : rows) {
        if (all_zero(r.coeffs)) {
            if (r.rhs.sign() > 0) return false;
            continue;
        }
        Rational scale;
        for (const Rational& c : r.coeffs) {
            if (!c.is_zero()) {
                scale = abs(c);
                break;
            }
        }
        for (Rational& c : r.coeffs) c /= scale;
        r.rhs /= scale;
        auto [it, inserted] = tightest.try_emplace(r.coeffs, r.rhs);
        if (!inserted && r.rhs > it->second) it->second = r.rhs;
    }
    rows.clear();
    for (auto& [coeffs, rhs] : tightest) rows.push_back(Row{coeffs, rhs, false});
    return true;
}

Rational choose(const std::optional<Rational>& lower, const std::optional<Rational>& upper,
                ValuePick pick) {
    if (lower && upper) {
        switch (pick) {
            case ValuePick::Lower: return *lower;
            case ValuePick::Upper: return *upper;
            case ValuePick::Midpoint: return (*lower + *upper) / Rational(2);
        }
    }
    if (lower) return *lower;
    if (upper) return *upper;
    return Rational(0);
}

}  // namespace

std::optional<Solution> solve(const std::vector<Row>& rows, std::size_t num_vars,
                              const SolveOptions& options) {
    std::vector<std::size_t> order(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) {
        order[i] = options.order == VariableOrder::Forward ? i : num_vars - 1 - i;
    }

    std::vector<Row> equalities;
    std::vector<Row> inequalities;
    for (const Row& r : rows) (r.equality ? equalities : inequalities).push_back(r);

    // Gauss-Jordan on the equalities; pivot rows end up expressed in free
    // variables only.
    std::vector<std::pair<std::size_t, Row>> pivots;
    std::vector<bool> is_pivot(num_vars, false);
    for (std::size_t e = 0; e < equalities.size(); ++e) {
        Row row = equalities[e];
        std::optional<std::size_t> var;
        for (std::size_t v : order) {
            if (!row.coeffs[v].is_zero()) {
                var = v;
                break;
            }
        }
        if (!var) {
            if (!row.rhs.is_zero()) return std::nullopt;
            continue;
        }
        Rational lead = row.coeffs[*var];
        for (Rational& c : row.coeffs) c /= lead;
        row.rhs /= lead;
        for (std::size_t k = e + 1; k < equalities.size(); ++k) substitute(equalities[k], row, *var);
        for (Row& r : inequalities) substitute(r, row, *var);
        for (auto& [_, p] : pivots) substitute(p, row, *var);
        is_pivot[*var] = true;
        pivots.emplace_back(*var, std::move(row));
    }

    Solution solution;
    solution.equality_rank = pivots.size();

    // Fourier-Motzkin over the free variables, keeping each stage's system for
    // back-substitution.
    if (!simplify(inequalities)) return std::nullopt;
    std::vector<std::vector<Row>> stages;
    std::vector<std::size_t> eliminated;
    for (std::size_t v : order) {
        if (is_pivot[v]) continue;
        stages.push_back(inequalities);
        eliminated.push_back(v);
        std::vector<Row> next;
        std::vector<const Row*> positive;
        std::vector<const Row*> negative;
        for (const Row& r : inequalities) {
            int s = r.coeffs[v].sign();
            if (s > 0) {
                positive.push_back(&r);
            } else if (s < 0) {
                negative.push_back(&r);
            } else {
                next.push_back(r);
            }
        }
        for (const Row* p : positive) {
            for (const Row* n : negative) {
                Rational wp = -n->coeffs[v];
                Rational wn = p->coeffs[v];
                Row combined{std::vector<Rational>(num_vars), wp * p->rhs + wn * n->rhs, false};
                for (std::size_t j = 0; j < num_vars; ++j) {
                    combined.coeffs[j] = wp * p->coeffs[j] + wn * n->coeffs[j];
                }
                combined.coeffs[v] = Rational(0);
                next.push_back(std::move(combined));
            }
        }
        if (!simplify(next)) return std::nullopt;
        inequalities = std::move(next);
    }

    std::vector<Rational> x(num_vars);
    for (std::size_t k = eliminated.size(); k-- > 0;) {
        std::size_t v = eliminated[k];
        std::optional<Rational> lower;
        std::optional<Rational> upper;
        for (const Row& r : stages[k]) {
            const Rational& c = r.coeffs[v];
            if (c.is_zero()) continue;
            Rational slack = r.rhs;
            for (std::size_t j = 0; j < num_vars; ++j) {
                if (j != v && !r.coeffs[j].is_zero()) slack -= r.coeffs[j] * x[j];
            }
            Rational bound = slack / c;
            if (c.sign() > 0) {
                if (!lower || bound > *lower) lower = bound;
            } else {
                if (!upper || bound < *upper) upper = bound;
            }
        }
        x[v] = choose(lower, upper, options.pick);
    }
    for (const auto& [v, row] : pivots) {
        Rational value = row.rhs;
        for (std::size_t j = 0; j < num_vars; ++j) {
            if (j != v && !row.coeffs[j].is_zero()) value -= row.coeffs[j] * x[j];
        }
        x[v] = value;
    }
    solution.point = std::move(x);
    return solution;
}

}  // namespace branchdecide::linear
