#include "tropisolve/formula.hpp"

#include <algorithm>
#include <set>

#include "tropisolve/lp.hpp"

namespace tropisolve {

Literal::Literal(std::map<std::size_t, Rational> coeffs, Relation rel, Rational bound)
    : rel_(rel), bound_(std::move(bound)) {
    for (auto& [j, a] : coeffs)
        if (!a.is_zero()) coeffs_.emplace(j, std::move(a));
}

Rational Literal::coeff(std::size_t var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational Literal::coeff_sum() const {
    Rational s;
    for (const auto& [j, a] : coeffs_) s += a;
    return s;
}

bool Literal::has_negative_coeff() const {
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.sign() < 0; });
}

std::optional<std::size_t> Literal::max_var() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.rbegin()->first;
}

Rational Literal::lhs(std::span<const Rational> x) const {
    Rational s;
    for (const auto& [j, a] : coeffs_) {
        if (j >= x.size()) throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates");
        s += a * x[j];
    }
    return s;
}

bool Literal::eval(std::span<const Rational> x) const {
    const Rational v = lhs(x);
    return strict() ? v > bound_ : v >= bound_;
}

bool Clause::eval(std::span<const Rational> x) const {
    return std::any_of(literals.begin(), literals.end(), [&](const Literal& l) { return l.eval(x); });
}

Formula::Formula(std::vector<std::string> var_names, std::vector<Clause> clauses) : var_names_(std::move(var_names)) {
    for (auto& c : clauses) add_clause(std::move(c));
}

std::size_t Formula::var(const std::string& name) {
    if (auto idx = find_var(name)) return *idx;
    var_names_.push_back(name);
    return var_names_.size() - 1;
}

std::optional<std::size_t> Formula::find_var(std::string_view name) const {
    auto it = std::find(var_names_.begin(), var_names_.end(), name);
    if (it == var_names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - var_names_.begin());
}

void Formula::add_clause(Clause c) {
    for (const auto& lit : c.literals)
        if (auto m = lit.max_var(); m && *m >= num_vars())
            throw DimensionMismatch("literal references variable index " + std::to_string(*m) + " but the formula has " +
                                    std::to_string(num_vars()) + " variables");
    clauses_.push_back(std::move(c));
}

std::vector<std::string> default_var_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

bool eval_point(const Formula& f, std::span<const Rational> x) {
    if (x.size() != f.num_vars())
        throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, formula has " +
                                std::to_string(f.num_vars()) + " variables");
    return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return c.eval(x); });
}

std::vector<Rational> shift_point(std::span<const Rational> x, const Rational& c) {
    std::vector<Rational> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(v + c);
    return out;
}

std::vector<Rational> pointwise_max(std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != y.size()) throw DimensionMismatch("pointwise_max of points with different dimensions");
    std::vector<Rational> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(max(x[i], y[i]));
    return out;
}

// ---------------------------------------------------------------------------
// Classifiers

std::vector<std::size_t> horn_columns(const Clause& clause, std::size_t num_vars) {
    std::set<std::size_t> negative_cols;
    for (const auto& lit : clause.literals)
        for (const auto& [j, a] : lit.coeffs())
            if (a.sign() < 0) negative_cols.insert(j);
    std::vector<std::size_t> out;
    if (negative_cols.empty()) {
        for (std::size_t k = 0; k < num_vars; ++k) out.push_back(k);
    } else if (negative_cols.size() == 1) {
        out.push_back(*negative_cols.begin());
    }
    return out;
}

bool is_horn(const Formula& f) {
    return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) {
        // A clause over zero variables has no column to name but no negative
        // coefficient either.
        return f.num_vars() == 0 || !horn_columns(c, f.num_vars()).empty();
    });
}

RestrictedReport restricted_horn_report(const Formula& f) {
    RestrictedReport report;
    for (const auto& clause : f.clauses()) {
        const auto cols = horn_columns(clause, f.num_vars());
        if (cols.empty() && f.num_vars() > 0) return {};
        RestrictedWitness w;
        w.column = cols.empty() ? 0 : cols.front();
        for (std::size_t i = 0; i < clause.literals.size(); ++i) {
            if (!clause.literals[i].has_negative_coeff()) continue;
            if (w.positive_literal) return {};
            w.positive_literal = i;
        }
        report.witnesses.push_back(w);
    }
    report.restricted = true;
    return report;
}

bool is_restricted_horn(const Formula& f) { return restricted_horn_report(f).restricted; }

bool is_tropically_convex_syntactic(const Formula& f) {
    if (!is_horn(f)) return false;
    for (const auto& clause : f.clauses())
        for (const auto& lit : clause.literals)
            if (!lit.coeff_sum().is_zero()) return false;
    return true;
}

namespace {

// Rows over 2n variables (x = 0..n-1, y = n..2n-1) for a literal applied to
// x, to y, or to max(x, y) under a fixed comparison pattern.
Row shifted_row(const Literal& lit, std::size_t n, const std::vector<bool>& pick_x, int which) {
    Row row;
    row.coeffs.assign(2 * n, Rational(0));
    for (const auto& [j, a] : lit.coeffs()) {
        std::size_t col = j;
        if (which == 1 || (which == 2 && !pick_x[j])) col = j + n;
        row.coeffs[col] += a;
    }
    row.rel = lit.relation();
    row.bound = EpsNum(lit.bound());
    return row;
}

}  // namespace

bool is_max_closed_semantic(const Formula& f, const Budget& budget) {
    const std::size_t n = f.num_vars();
    if (n > kMaxSemanticVars)
        throw PreconditionError("semantic max-closure check supports at most " + std::to_string(kMaxSemanticVars) +
                                " variables, got " + std::to_string(n));
    // Constant literals: a true one satisfies its clause everywhere, a false
    // one contributes nothing.
    std::vector<Clause> clauses;
    for (const auto& clause : f.clauses()) {
        Clause kept;
        bool always = false;
        for (const auto& lit : clause.literals) {
            if (!lit.coeffs().empty()) {
                kept.literals.push_back(lit);
                continue;
            }
            const bool holds = lit.strict() ? lit.bound().sign() < 0 : lit.bound().sign() <= 0;
            always = always || holds;
        }
        if (kept.literals.empty() && !always) return true;  // empty relation
        if (!always) clauses.push_back(std::move(kept));
    }
    // Hypotheses: the formula on x and on y.
    std::vector<Disjunction> hyp;
    for (int which = 0; which < 2; ++which) {
        for (const auto& clause : clauses) {
            Disjunction d;
            for (const auto& lit : clause.literals) d.push_back({shifted_row(lit, n, {}, which)});
            hyp.push_back(std::move(d));
        }
    }
    std::stable_sort(hyp.begin(), hyp.end(), [](const Disjunction& a, const Disjunction& b) { return a.size() < b.size(); });
    if (n == 0) return true;
    std::vector<bool> pick_x(n);
    // Swapping x and y maps a pattern onto its complement, so the last bit can
    // stay set.
    const std::uint64_t top = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = top; mask < (top << 1); ++mask) {
        // Bit j set: x_j >= y_j and the max takes x_j; clear: x_j <= y_j.
        LinSystem base(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            pick_x[j] = (mask >> j) & 1u;
            Row r;
            r.coeffs.assign(2 * n, Rational(0));
            r.coeffs[j] = Rational(pick_x[j] ? 1 : -1);
            r.coeffs[j + n] = Rational(pick_x[j] ? -1 : 1);
            r.rel = Relation::Geq;
            base.add(std::move(r));
        }
        // Each conclusion clause C: hypotheses and pattern and not(C) must be
        // infeasible; not(C) is the conjunction of negated literals.
        for (const auto& clause : clauses) {
            LinSystem test = base;
            for (const auto& lit : clause.literals) test.add(negate(shifted_row(lit, n, pick_x, 2)));
            if (first_feasible_selection(test, hyp, budget.selections)) return false;
        }
    }
    return true;
}

}  // namespace tropisolve
