#pragma once

// Max/min/average operator systems, their primal and dual problems, and the
// tropically convex CSP pipeline built on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/formula.hpp"
#include "tropisolve/numeric.hpp"

namespace tropisolve {

struct OpArg {
    std::size_t var = 0;
    EpsNum offset;              // Max / Min only
    Rational weight = Rational(1);  // Avg only, > 0

    friend bool operator==(const OpArg&, const OpArg&) = default;
};

/// Max: max_l (x_{j_l} + k_l).  Min: min_l (x_{j_l} + k_l).
/// Avg: (sum_l w_l x_{j_l}) / (sum_l w_l) + offset.
struct Operator {
    enum class Kind { Max, Min, Avg };
    Kind kind = Kind::Max;
    std::vector<OpArg> args;
    EpsNum offset;  // Avg only

    static Operator max(std::vector<std::pair<std::size_t, EpsNum>> args);
    static Operator min(std::vector<std::pair<std::size_t, EpsNum>> args);
    static Operator avg(std::vector<std::pair<Rational, std::size_t>> weighted, EpsNum offset = {});

    bool has_eps() const;
    Rational total_weight() const;

    friend bool operator==(const Operator&, const Operator&) = default;
};

struct OperatorSystem {
    std::vector<std::string> names;
    std::vector<Operator> ops;

    std::size_t size() const noexcept { return ops.size(); }
    bool has_eps() const;
    /// Throws PreconditionError on empty argument lists, nonpositive weights
    /// or out-of-range variables.
    void validate() const;

    friend bool operator==(const OperatorSystem&, const OperatorSystem&) = default;
};

/// One component per line: `x := max(y + 1, z - eps)`, `min(...)`,
/// `avg(2: y, 1: z) + 1/3`. Component order follows the left-hand sides.
OperatorSystem parse_operator_system(std::string_view text);
std::string print_operator_system(const OperatorSystem& o);
std::string print_operator(const Operator& op, std::span<const std::string> names);

ExtEps eval_operator(const Operator& op, std::span<const ExtEps> x);
/// Rational offsets only.
ExtVal eval_operator(const Operator& op, std::span<const ExtVal> x);

struct PrimalWitness {
    std::vector<Rational> x;
    /// Concrete value substituted for eps, when the system carries eps offsets.
    std::optional<Rational> epsilon;
};

struct DualCertificate {
    std::vector<ExtEps> y;
};

/// x < o(x) (strict) or x <= o(x).
std::optional<PrimalWitness> solve_primal(const OperatorSystem& o, bool strict, const Budget& budget = {});

/// y >= o(y) (non-strict) or y > o(y) with +inf > +inf (strict), y not all +inf.
/// Eps offsets are handled exactly over V.
std::optional<DualCertificate> solve_dual(const OperatorSystem& o, bool strict, const Budget& budget = {});

bool verify_primal_witness(const OperatorSystem& o, const PrimalWitness& w, bool strict);
bool verify_dual_certificate(const OperatorSystem& o, const DualCertificate& y, bool strict);

struct DualityReport {
    std::optional<PrimalWitness> primal_strict;
    std::optional<DualCertificate> dual_nonstrict;
    std::optional<PrimalWitness> primal_nonstrict;
    std::optional<DualCertificate> dual_strict;
};

/// Runs all four problems. Throws ConsistencyError unless exactly one of each
/// pair (strict primal, non-strict dual) and (non-strict primal, strict dual)
/// is satisfiable, or when a returned witness fails verification.
DualityReport check_duality(const OperatorSystem& o, const Budget& budget = {});

// Constraint language over LT, T+1, T-1, S3, M0.

enum class AtomKind { LT, TPlus1, TMinus1, S3, M0 };

struct CspAtom {
    AtomKind kind;
    std::vector<std::size_t> vars;  // (x, y) or (x, y, z)

    friend bool operator==(const CspAtom&, const CspAtom&) = default;
};

struct CspInstance {
    std::vector<std::string> names;
    std::vector<CspAtom> atoms;

    std::size_t num_vars() const noexcept { return names.size(); }
    friend bool operator==(const CspInstance&, const CspInstance&) = default;
};

std::size_t atom_arity(AtomKind k);
std::string atom_name(AtomKind k);

/// One atom per line: `LT(x,y)`, `T+1(x,y)`, `T-1(x,y)`, `S3(x,y,z)`, `M0(x,y,z)`.
CspInstance parse_csp(std::string_view text);
std::string print_csp(const CspInstance& inst);

/// Each atom as a Horn clause (LT strict).
Formula csp_to_formula(const CspInstance& inst);

/// Strict atoms become x <= y - eps; variables bounded by several atoms are
/// split into copies tied by a Min; unbounded variables get Max((x, +1)).
OperatorSystem csp_to_operator_system(const CspInstance& inst);

struct CspResult {
    bool sat = false;
    std::vector<Rational> witness;   // sat
    std::optional<Rational> t0;      // sat: largest admissible eps, if bounded
    OperatorSystem system;           // the eps-system
    DualCertificate certificate;     // unsat
};

/// With cross_check set, also runs the dual side on satisfiable instances and
/// throws ConsistencyError if both sides succeed.
CspResult solve_csp(const CspInstance& inst, const Budget& budget = {}, bool cross_check = true);

/// Satisfiability in 0+ of a clause formula whose variable `t_index` is the
/// parameter t.
struct ZeroPlusResult {
    bool sat = false;
    std::vector<EpsNum> witness;   // V point, t coordinate = eps
    std::optional<Rational> t0;    // sup of admissible t near 0, if bounded
    Rational t;                    // t0/2, or 1 when unbounded
    std::vector<Rational> sample;  // point at t, t coordinate included
};

ZeroPlusResult sat_in_zero_plus(const Formula& phi, std::size_t t_index, const Budget& budget = {});

}  // namespace tropisolve
