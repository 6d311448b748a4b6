#pragma once

// Exact dense Gaussian elimination over the rationals.

#include <vector>

#include "tropisolve/numeric.hpp"

namespace tropisolve::detail {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves A x = b for square nonsingular A; throws ConsistencyError when A is
/// singular.
std::vector<Rational> solve_linear(Matrix a, std::vector<Rational> b);

}  // namespace tropisolve::detail
