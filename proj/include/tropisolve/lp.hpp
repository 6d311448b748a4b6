#pragma once

// Exact feasibility of strict / non-strict linear inequality systems over Q
// and over V = Q + Q*eps, by Fourier-Motzkin elimination.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/formula.hpp"
#include "tropisolve/numeric.hpp"

namespace tropisolve {

/// coeffs . x  (>= | >)  bound, with rational coefficients and a bound in V.
struct Row {
    std::vector<Rational> coeffs;
    Relation rel = Relation::Geq;
    EpsNum bound;

    bool strict() const noexcept { return rel == Relation::Gt; }
    EpsNum lhs(std::span<const EpsNum> x) const;
    bool holds(std::span<const EpsNum> x) const;
    bool holds(std::span<const Rational> x) const;
    bool is_zero() const;

    friend bool operator==(const Row&, const Row&) = default;
};

/// Negation: not(a.x >= c) is -a.x > -c, not(a.x > c) is -a.x >= -c.
Row negate(const Row& row);

Row literal_row(const Literal& lit, std::size_t num_vars);

/// Row a.x >= c built from a sparse list of (var, coeff).
Row make_row(std::size_t num_vars, std::initializer_list<std::pair<std::size_t, Rational>> terms,
             Relation rel, EpsNum bound);

struct LinSystem {
    std::size_t num_vars = 0;
    std::vector<Row> rows;

    LinSystem() = default;
    explicit LinSystem(std::size_t n) : num_vars(n) {}

    void add(Row row);
    /// x_var == value, as two opposed non-strict rows.
    void pin(std::size_t var, const EpsNum& value);
    bool holds(std::span<const EpsNum> x) const;
};

/// Nonnegative multipliers over the input rows whose combination has all-zero
/// coefficients and a contradictory bound.
struct FarkasCertificate {
    std::vector<Rational> multipliers;
};

class LpResult {
public:
    static LpResult feasible(std::vector<EpsNum> witness) { return LpResult(Feasible{std::move(witness)}); }
    static LpResult infeasible(FarkasCertificate cert) { return LpResult(Infeasible{std::move(cert)}); }

    bool is_feasible() const noexcept { return std::holds_alternative<Feasible>(v_); }
    const std::vector<EpsNum>& witness() const { return std::get<Feasible>(v_).witness; }
    const FarkasCertificate& certificate() const { return std::get<Infeasible>(v_).certificate; }

private:
    struct Feasible { std::vector<EpsNum> witness; };
    struct Infeasible { FarkasCertificate certificate; };
    explicit LpResult(std::variant<Feasible, Infeasible> v) : v_(std::move(v)) {}
    std::variant<Feasible, Infeasible> v_;
};

/// Eliminates variables in ascending index order; back-substitutes a witness
/// (midpoint of finite intervals, bound +/- 1 when one-sided, 0 when free) or
/// returns a Farkas certificate.
LpResult fm_feasible(const LinSystem& sys);

/// Feasibility only; skips witness and certificate bookkeeping and picks the
/// elimination order greedily (fewest combined rows first).
bool fm_is_feasible(const LinSystem& sys);

/// System over the same index space whose rows mention only kept variables
/// and whose solution set is the coordinate projection of the input's.
LinSystem fm_project(const LinSystem& sys, std::span<const std::size_t> keep);

/// sys entails row (sys and not(row) is infeasible).
bool implies(const LinSystem& sys, const Row& row);

bool verify_certificate(const LinSystem& sys, const FarkasCertificate& cert);

// Disjunctive search over conjunctions of alternatives.

using Conjunction = std::vector<Row>;
using Disjunction = std::vector<Conjunction>;

struct Selection {
    std::vector<std::size_t> choices;
    std::vector<EpsNum> witness;
};

/// Number of full selections, saturating.
std::uint64_t selection_count(std::span<const Disjunction> clauses);

/// First selection, in lexicographic order of choices, whose conjunction with
/// `base` is feasible. Infeasible prefixes are pruned. Throws BudgetExceeded
/// when the selection count exceeds the budget.
std::optional<Selection> first_feasible_selection(const LinSystem& base, std::span<const Disjunction> clauses,
                                                  std::uint64_t budget);

/// Visits every feasible selection in lexicographic order until the visitor
/// returns false.
void for_each_feasible_selection(const LinSystem& base, std::span<const Disjunction> clauses,
                                 std::uint64_t budget, const std::function<bool(const Selection&)>& visit);

/// Clauses of a formula as disjunctions of single-row alternatives.
std::vector<Disjunction> formula_disjunctions(const Formula& f);

/// Largest t0 such that the point a + t*b satisfies `row` (with eps read as t)
/// for all t in (0, t0]. nullopt when the row holds for every t > 0; zero when
/// it fails arbitrarily close to 0.
struct Threshold {
    bool holds_near_zero = false;
    std::optional<Rational> sup;  // empty: unbounded
    bool sup_attained = true;
};
Threshold row_threshold(const Row& row, std::span<const EpsNum> point);

/// Concrete eps value in (0, t0/2] where t0 is the smallest threshold over rows
/// satisfied by the V point. Returns 1 when nothing bounds it.
Rational choose_epsilon(std::span<const Row> rows, std::span<const EpsNum> point);

std::vector<Rational> instantiate(std::span<const EpsNum> point, const Rational& t);

}  // namespace tropisolve
