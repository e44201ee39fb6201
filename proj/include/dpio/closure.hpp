#pragma once

// Naive triple-loop DP closure and the exhaustive parenthesization oracle.

#include <vector>

#include "dpio/kernels.hpp"
#include "dpio/tri_matrix.hpp"

namespace dpio {

template <class K>
struct ClosureRun {
    TriMatrix<typename K::Cell> table;
    typename K::Cell solution;
    Addr ctx_base = 0;
};

// Bottom-up closure over subproblem length: S(i,j) aggregates
// combine(S(i,k), S(k+1,j)) over all splits k. Every table access goes
// through the tracer; padding is never touched.
template <class K>
void naive_closure_into(const K& kernel, TriMatrix<typename K::Cell>& x, Tracer& t, Addr ctx_base) {
    const int m = static_cast<int>(kernel.input_count());
    for (int len = 2; len <= m; ++len) {
        for (int i = 1; i <= m - len + 1; ++i) {
            const int j = i + len - 1;
            x.set(i, j + 1, kernel.least_optimal(), t);
            for (int k = i; k <= j - 1; ++k) {
                auto q = kernel.combine(x.get(i, k + 1, t), x.get(k + 1, j + 1, t), t, ctx_base);
                x.set(i, j + 1, kernel.aggregate(x.get(i, j + 1, t), q), t);
            }
        }
    }
}

template <class K>
ClosureRun<K> naive_closure(const K& kernel, Layout layout = Layout::RowMajor, Tracer t = Tracer{}) {
    AddressSpace space;
    Addr ctx_base = space.alloc(kernel.context_words());
    int dim = next_pow2(static_cast<int>(kernel.input_count()) + 1);
    auto x = new_padded(kernel, layout, space.alloc(static_cast<std::uint64_t>(dim) * dim * K::kWordsPerCell));
    naive_closure_into(kernel, x, t, ctx_base);
    auto solution = extract_solution<K>(x, kernel.input_count());
    return {std::move(x), solution, ctx_base};
}

inline constexpr std::size_t kBruteForceCap = 12;

// Independent oracle: enumerates every full parenthesization (binary parse
// tree) and aggregates over the combine of each, with no DP folding inside.
// Catalan growth caps the instance size.
template <class K>
typename K::Cell brute_force_closure(const K& kernel) {
    using Cell = typename K::Cell;
    const std::size_t m = kernel.input_count();
    if (m > kBruteForceCap) throw InstanceTooLarge("brute force capped at 12 inputs");
    Tracer silent;
    const std::size_t n = m + 1;
    // all_trees[i][j] = value of every parse tree over inputs i..j (1-based).
    std::vector<std::vector<std::vector<Cell>>> all(n, std::vector<std::vector<Cell>>(n));
    for (std::size_t i = 1; i <= m; ++i) all[i - 1][i - 1].push_back(kernel.input(i));
    for (std::size_t len = 2; len <= m; ++len) {
        for (std::size_t i = 1; i + len - 1 <= m; ++i) {
            std::size_t j = i + len - 1;
            auto& out = all[i - 1][j - 1];
            for (std::size_t k = i; k < j; ++k)
                for (const Cell& l : all[i - 1][k - 1])
                    for (const Cell& r : all[k][j - 1])
                        out.push_back(kernel.combine(l, r, silent, 0));
        }
    }
    Cell best = kernel.least_optimal();
    for (const Cell& c : all[0][m - 1]) best = kernel.aggregate(best, c);
    return best;
}

}  // namespace dpio
