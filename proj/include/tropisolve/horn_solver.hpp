#pragma once

// Polynomial-time satisfiability for restricted Horn formulas, plus the
// exhaustive disjunct-selection oracle.

#include <cstddef>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/formula.hpp"

namespace tropisolve {

struct Removal {
    std::size_t clause = 0;
    std::size_t literal = 0;  // index in the input clause
    std::size_t pass = 0;     // 1-based
};

struct SolveTrace {
    std::vector<Removal> removed;
    /// Unit literals present when the loop stopped.
    std::vector<Literal> psi;
    /// Set when some clause lost all of its literals.
    std::optional<std::size_t> emptied_clause;
    std::size_t passes = 0;
};

struct SolveResult {
    bool sat = false;
    std::vector<Rational> witness;  // only when sat
    SolveTrace trace;
};

SolveResult solve_restricted(const Formula& phi);

/// Tries every choice of one literal per clause. Throws BudgetExceeded when
/// the product of clause sizes exceeds the selection limit.
SolveResult brute_force_sat(const Formula& phi, const Budget& budget = {});

bool verify_witness(const Formula& phi, std::span<const Rational> x);

}  // namespace tropisolve
