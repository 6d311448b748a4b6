#include "tropisolve/horn_solver.hpp"

#include "tropisolve/lp.hpp"

namespace tropisolve {

namespace {

// Rational point from a V-valued witness of `rows`.
std::vector<Rational> concretize(std::span<const Row> rows, std::span<const EpsNum> w) {
    bool rational = true;
    for (const auto& v : w) rational = rational && v.is_rational();
    if (rational) {
        std::vector<Rational> out;
        for (const auto& v : w) out.push_back(v.real());
        return out;
    }
    return instantiate(w, choose_epsilon(rows, w));
}

}  // namespace

SolveResult solve_restricted(const Formula& phi) {
    const auto report = restricted_horn_report(phi);
    if (!report.restricted) throw PreconditionError("formula is not restricted Horn");
    const std::size_t n = phi.num_vars();
    const auto& clauses = phi.clauses();

    std::vector<std::vector<bool>> alive;
    for (const auto& c : clauses) alive.emplace_back(c.literals.size(), true);
    auto is_negative = [&](std::size_t c, std::size_t l) { return report.witnesses[c].positive_literal != l; };

    SolveResult res;
    LinSystem psi(n);
    auto rebuild_psi = [&]() -> bool {
        psi.rows.clear();
        res.trace.psi.clear();
        for (std::size_t c = 0; c < clauses.size(); ++c) {
            std::size_t count = 0;
            std::size_t last = 0;
            for (std::size_t l = 0; l < alive[c].size(); ++l)
                if (alive[c][l]) {
                    ++count;
                    last = l;
                }
            if (count == 0) {
                res.trace.emptied_clause = c;
                return false;
            }
            if (count == 1) {
                psi.add(literal_row(clauses[c].literals[last], n));
                res.trace.psi.push_back(clauses[c].literals[last]);
            }
        }
        return true;
    };

    for (;;) {
        ++res.trace.passes;
        if (!rebuild_psi() || !fm_is_feasible(psi)) return res;
        std::vector<Removal> pass_removals;
        for (std::size_t c = 0; c < clauses.size(); ++c)
            for (std::size_t l = 0; l < alive[c].size(); ++l) {
                if (!alive[c][l] || !is_negative(c, l)) continue;
                LinSystem test = psi;
                test.add(literal_row(clauses[c].literals[l], n));
                if (!fm_is_feasible(test)) pass_removals.push_back({c, l, res.trace.passes});
            }
        if (pass_removals.empty()) break;
        for (const auto& r : pass_removals) {
            alive[r.clause][r.literal] = false;
            res.trace.removed.push_back(r);
        }
    }

    // Componentwise max of one solution per surviving negative literal.
    std::optional<std::vector<Rational>> s;
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (std::size_t l = 0; l < alive[c].size(); ++l) {
            if (!alive[c][l] || !is_negative(c, l)) continue;
            LinSystem test = psi;
            test.add(literal_row(clauses[c].literals[l], n));
            const auto lp = fm_feasible(test);
            if (!lp.is_feasible()) throw ConsistencyError("surviving literal became infeasible");
            auto point = concretize(test.rows, lp.witness());
            s = s ? pointwise_max(*s, point) : std::move(point);
        }
    if (!s) {
        const auto lp = fm_feasible(psi);
        s = concretize(psi.rows, lp.witness());
    }
    if (!eval_point(phi, *s)) throw ConsistencyError("restricted Horn witness fails the formula");
    res.sat = true;
    res.witness = std::move(*s);
    return res;
}

SolveResult brute_force_sat(const Formula& phi, const Budget& budget) {
    const auto clauses = formula_disjunctions(phi);
    const LinSystem base(phi.num_vars());
    SolveResult res;
    const auto sel = first_feasible_selection(base, clauses, budget.selections);
    if (!sel) return res;
    std::vector<Row> rows;
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (const auto& r : clauses[c][sel->choices[c]]) rows.push_back(r);
    res.sat = true;
    res.witness = concretize(rows, sel->witness);
    return res;
}

bool verify_witness(const Formula& phi, std::span<const Rational> x) { return eval_point(phi, x); }

}  // namespace tropisolve
