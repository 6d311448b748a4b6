#pragma once

// Compilation of Horn clauses into primitive positive formulas over the
// finite bases {<, 1, -1, S1, S2, M0} and {<, T+1, T-1, S3, M0}, and an exact
// equivalence checker for formulas with existential variables.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/formula.hpp"

namespace tropisolve {

enum class PPRel {
    Lt,      // x < y
    One,     // x = 1
    NegOne,  // x = -1
    S1,      // 2x <= y
    S2,      // x <= y + z
    M0,      // x <= y or x <= z
    TPlus,   // x <= y + 1
    TMinus,  // x <= y - 1
    S3,      // x <= (y + z) / 2
};

std::string pp_rel_name(PPRel r);
std::size_t pp_rel_arity(PPRel r);

struct PPAtom {
    PPRel rel;
    std::vector<std::string> args;

    friend bool operator==(const PPAtom&, const PPAtom&) = default;
};

struct PPFormula {
    std::vector<std::string> free_vars;
    /// Variables pinned to 1 / -1 by One / NegOne atoms.
    std::vector<std::string> constants;
    std::vector<std::string> bound_vars;
    std::vector<PPAtom> atoms;

    std::size_t atom_count() const noexcept { return atoms.size(); }
    friend bool operator==(const PPFormula&, const PPFormula&) = default;
};

/// `CONST _one _neg_one` (when constants are used) followed by
/// `EXISTS _t1 _t2 . A & B & ...`; `TRUE` for an empty conjunction.
std::string print_pp(const PPFormula& pp);
std::string pp_to_json(const PPFormula& pp, int indent = -1);
PPFormula pp_from_json(const std::string& text);

/// Each clause must be Horn. Throws PreconditionError otherwise.
PPFormula compile_gamma0(const Formula& f);
PPFormula compile_gamma0(const Clause& clause, const std::vector<std::string>& var_names);

/// Each clause must be Horn with zero row sums. Throws PreconditionError
/// otherwise.
PPFormula compile_gamma_t(const Formula& f);
PPFormula compile_gamma_t(const Clause& clause, const std::vector<std::string>& var_names);

/// A formula some of whose variables are existentially quantified.
struct ExistsFormula {
    Formula formula;
    std::vector<std::size_t> existential;
};

/// Variables are free, then constants, then bound, in declaration order.
ExistsFormula pp_to_horn(const PPFormula& pp);

/// Decides the existential closure at a point. Throws PreconditionError when
/// a free variable is unassigned.
bool pp_eval(const PPFormula& pp, const std::map<std::string, Rational>& assignment, const Budget& budget = {});

/// Mutual inclusion of the projections onto the free variables (matched by
/// name). Throws PreconditionError when the free-variable sets differ.
bool equivalence_check(const ExistsFormula& a, const ExistsFormula& b, const Budget& budget = {});
bool equivalence_check(const Formula& a, const Formula& b, const Budget& budget = {});

}  // namespace tropisolve
