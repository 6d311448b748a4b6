#pragma once

// Semilinear Horn formulas: data model, text format, and classifiers.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/numeric.hpp"

namespace tropisolve {

enum class Relation { Geq, Gt };

/// sum_j coeffs[j] * x_j  (>= | >)  bound. Never stores a zero coefficient.
class Literal {
public:
    Literal() = default;
    Literal(std::map<std::size_t, Rational> coeffs, Relation rel, Rational bound);

    const std::map<std::size_t, Rational>& coeffs() const noexcept { return coeffs_; }
    Relation relation() const noexcept { return rel_; }
    bool strict() const noexcept { return rel_ == Relation::Gt; }
    const Rational& bound() const noexcept { return bound_; }

    Rational coeff(std::size_t var) const;
    Rational coeff_sum() const;
    bool has_negative_coeff() const;
    /// Largest variable index used, if any.
    std::optional<std::size_t> max_var() const;

    Rational lhs(std::span<const Rational> x) const;
    bool eval(std::span<const Rational> x) const;

    friend bool operator==(const Literal&, const Literal&) = default;

private:
    std::map<std::size_t, Rational> coeffs_;
    Relation rel_ = Relation::Geq;
    Rational bound_;
};

/// Disjunction of literals. An empty clause denotes FALSE.
struct Clause {
    std::vector<Literal> literals;

    bool is_unit() const noexcept { return literals.size() == 1; }
    bool eval(std::span<const Rational> x) const;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Conjunction of clauses over variables 0..num_vars-1.
class Formula {
public:
    Formula() = default;
    explicit Formula(std::vector<std::string> var_names, std::vector<Clause> clauses = {});

    std::size_t num_vars() const noexcept { return var_names_.size(); }
    const std::vector<std::string>& var_names() const noexcept { return var_names_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

    /// Index of a named variable, creating it when absent.
    std::size_t var(const std::string& name);
    std::optional<std::size_t> find_var(std::string_view name) const;
    void add_clause(Clause c);

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    std::vector<std::string> var_names_;
    std::vector<Clause> clauses_;
};

/// Canonical names x1..xn.
std::vector<std::string> default_var_names(std::size_t n);

/// Parses the line-oriented clause format (one clause per line, literals
/// separated by `|`, `#` comments). Comparisons <= and < are stored negated.
Formula parse_formula(std::string_view text);

std::string print_literal(const Literal& lit, std::span<const std::string> names);
std::string print_clause(const Clause& clause, std::span<const std::string> names);
/// Inverse of parse_formula on its normal form.
std::string print_formula(const Formula& f);

// Classifiers

/// Every column k such that all coefficients outside k are nonnegative.
std::vector<std::size_t> horn_columns(const Clause& clause, std::size_t num_vars);

bool is_horn(const Formula& f);

struct RestrictedWitness {
    /// The positive literal: the only literal with a negative coefficient.
    std::optional<std::size_t> positive_literal;
    /// A Horn column of the clause.
    std::size_t column = 0;
};

struct RestrictedReport {
    bool restricted = false;
    /// Present only when restricted; one entry per clause.
    std::vector<RestrictedWitness> witnesses;
};

RestrictedReport restricted_horn_report(const Formula& f);
bool is_restricted_horn(const Formula& f);

bool is_tropically_convex_syntactic(const Formula& f);

/// Largest variable count accepted by is_max_closed_semantic.
inline constexpr std::size_t kMaxSemanticVars = 6;

/// Decides whether the solution set is closed under componentwise max by
/// splitting on the 2^n coordinate comparison patterns.
bool is_max_closed_semantic(const Formula& f, const Budget& budget = {});

bool eval_point(const Formula& f, std::span<const Rational> x);
std::vector<Rational> shift_point(std::span<const Rational> x, const Rational& c);
std::vector<Rational> pointwise_max(std::span<const Rational> x, std::span<const Rational> y);

}  // namespace tropisolve
