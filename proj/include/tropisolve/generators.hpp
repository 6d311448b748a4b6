#pragma once

// Seeded random instance families shared by the tests, the acceptance suite
// and the CLI selftest.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropisolve/formula.hpp"
#include "tropisolve/games.hpp"
#include "tropisolve/tropical.hpp"

namespace tropisolve::gen {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);
Rational small_rational(Rng& rng, int max_num = 5, int max_den = 4);

struct HornShape {
    std::size_t max_vars = 5;
    std::size_t max_clauses = 6;
    std::size_t max_literals = 3;
    int coeff_bound = 3;  // coefficients in [-coeff_bound, coeff_bound]
    int const_bound = 3;  // bounds in [-const_bound, const_bound]
};

/// Horn clauses where only column k may carry negative coefficients and at
/// most one literal per clause does.
Formula random_restricted_horn(Rng& rng, const HornShape& shape = {});

/// Horn clauses with a random column k per clause; any number of literals
/// may use it negatively.
Formula random_horn(Rng& rng, const HornShape& shape = {});

/// A single Horn clause over exactly `num_vars` variables.
Clause random_horn_clause(Rng& rng, std::size_t num_vars, std::size_t max_literals, int coeff_bound,
                          int const_bound);

/// A single Horn clause whose literals have zero coefficient sums.
Clause random_tropical_clause(Rng& rng, std::size_t num_vars, std::size_t max_literals, int coeff_bound,
                              int const_bound);

struct OperatorShape {
    std::size_t max_dim = 4;
    std::size_t max_arity = 3;
    int offset_bound = 3;
    int max_weight = 3;
};

OperatorSystem random_operator_system(Rng& rng, const OperatorShape& shape = {});

CspInstance random_csp(Rng& rng, std::size_t max_vars = 5, std::size_t max_atoms = 6);

Game random_game(Rng& rng, std::size_t max_vertices = 4, std::size_t max_degree = 2, int payoff_bound = 3);

/// A parameterized formula with a known verdict for satisfiability in 0+.
struct ZeroPlusCase {
    std::string family;
    Formula formula;
    std::size_t t_index = 0;
    bool expected = false;
    /// For satisfiable cases: a point over V (t coordinate = eps) that satisfies
    /// every clause.
    std::vector<EpsNum> known_witness;
};

/// Family `index % 5` of the satisfiable (or unsatisfiable) crafted families,
/// with random rational parameters.
ZeroPlusCase crafted_zero_plus(Rng& rng, bool satisfiable, std::size_t index);

/// The clause x2 - x1 >= c | x3 - x1 >= c.
Formula max_atoms_formula(const Rational& c);

}  // namespace tropisolve::gen
