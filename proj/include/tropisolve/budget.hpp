#pragma once

#include <cstdint>
#include <string>

namespace tropisolve {

/// Enumeration limits shared by every exponential search in the library.
struct Budget {
    /// Disjunct selections (product of clause sizes) a single search may cover.
    std::uint64_t selections = 1'000'000;
    /// Finiteness patterns enumerated by the dual solver.
    std::uint64_t patterns = 1u << 16;
    /// Pure stationary strategy pairs enumerated by the game solvers.
    std::uint64_t strategy_pairs = 100'000;
};

/// Multiplies a running product, saturating instead of overflowing.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

/// Parses `N` (all limits) or `selection=N,pattern=N,strategy=N` (any subset).
Budget parse_budget(const std::string& text, Budget base = {});

}  // namespace tropisolve
