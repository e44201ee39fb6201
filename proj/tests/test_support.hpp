#pragma once

// Test-only reference implementations, independent of the padded-matrix
// closure path.

#include <vector>

#include "dpio/kernels.hpp"

namespace dpio::testing {

// Plain unpadded triple loop over a dense vector table.
template <class K>
std::vector<typename K::Cell> reference_table(const K& kernel) {
    using Cell = typename K::Cell;
    Tracer silent;
    const int m = static_cast<int>(kernel.input_count());
    std::vector<Cell> s(static_cast<std::size_t>(m) * m, kernel.least_optimal());
    auto at = [&](int i, int j) -> Cell& { return s[static_cast<std::size_t>(i - 1) * m + (j - 1)]; };
    for (int i = 1; i <= m; ++i) at(i, i) = kernel.input(i);
    for (int len = 2; len <= m; ++len)
        for (int i = 1; i + len - 1 <= m; ++i) {
            const int j = i + len - 1;
            for (int k = i; k < j; ++k)
                at(i, j) = kernel.aggregate(at(i, j), kernel.combine(at(i, k), at(k + 1, j), silent, 0));
        }
    return s;
}

template <class K>
typename K::Cell reference_solution(const K& kernel) {
    const int m = static_cast<int>(kernel.input_count());
    return reference_table(kernel)[static_cast<std::size_t>(0) * m + (m - 1)];
}

inline bool cells_close(const CostTriple& a, const CostTriple& b) { return a == b; }

inline bool cells_close(const BstCell& a, const BstCell& b) {
    if (a.least_optimal() || b.least_optimal()) return a.least_optimal() == b.least_optimal();
    if (a.lo != b.lo || a.hi != b.hi) return false;
    double scale = std::max({1.0, std::abs(a.cost), std::abs(b.cost)});
    return std::abs(a.cost - b.cost) <= 1e-9 * scale;
}

}  // namespace dpio::testing
