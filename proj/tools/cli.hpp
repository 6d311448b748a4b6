#pragma once

#include <ostream>

namespace tropisolve::cli {

/// Exit codes.
inline constexpr int kOk = 0;            // SAT / true
inline constexpr int kNegative = 1;      // UNSAT / false
inline constexpr int kUsage = 2;         // usage or input error
inline constexpr int kBudget = 3;        // budget exceeded
inline constexpr int kConsistency = 4;   // internal consistency violation

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tropisolve::cli
