#pragma once

// Recomputation schedule for caches holding at least twice the input: pin
// the inputs, keep one accumulator pebble per open subproblem, and rebuild
// each split's operands larger-side-first instead of keeping the table
// around. Everything lives in 2n cells of address space, so the simulated
// I/O stays linear in n while the table-based closures pay the full
// n^3/(B sqrt(M)).
//
// Replaying a subproblem that was already walked re-issues only its root
// pebble write: the full replay would touch the same resident cells (the
// footprint never exceeds the cache), so the collapsed trace has the same
// miss count and keeps the walk polynomial.

#include <vector>

#include "dpio/closure.hpp"
#include "dpio/kernels.hpp"

namespace dpio {

template <class K>
struct LargeMemRun {
    typename K::Cell solution;
    std::size_t slots_used = 0;
};

template <class K>
LargeMemRun<K> large_memory_schedule(const K& kernel, Tracer t = Tracer{}) {
    using Cell = typename K::Cell;
    const int n = static_cast<int>(kernel.input_count());
    const std::size_t wpc = K::kWordsPerCell;
    if (t.cache() && t.cache()->capacity_words() < 2 * static_cast<std::uint64_t>(n) * wpc)
        throw CacheTooSmall("schedule needs M >= 2n words per cell unit");

    AddressSpace space;
    const Addr ctx_base = space.alloc(kernel.context_words());
    const Addr input_base = space.alloc(static_cast<std::uint64_t>(n) * wpc);
    const Addr slot_base = space.alloc(static_cast<std::uint64_t>(n) * wpc);
    auto slot_addr = [&](int sp) { return slot_base + static_cast<std::uint64_t>(sp % n) * wpc; };

    // Values are produced once, untraced; the traced walk below only decides
    // where each value is resident.
    auto ref = naive_closure(kernel);
    auto value = [&](int i, int j) { return ref.table.peek(i, j + 1); };

    for (int i = 1; i <= n; ++i) t.read(input_base + static_cast<std::uint64_t>(i - 1) * wpc, wpc);

    std::vector<char> walked(static_cast<std::size_t>(n) * n, 0);
    std::size_t max_sp = 0;

    // Pebbles the value of (i,j) and returns its address.
    auto walk = [&](auto&& self, int i, int j, int sp) -> Addr {
        if (i == j) return input_base + static_cast<std::uint64_t>(i - 1) * wpc;
        max_sp = std::max(max_sp, static_cast<std::size_t>(sp));
        char& seen = walked[static_cast<std::size_t>(i - 1) * n + (j - 1)];
        if (seen) {  // collapsed replay of a subtree walked before
            t.write(slot_addr(sp), wpc);
            return slot_addr(sp);
        }
        seen = 1;
        const Addr acc = slot_addr(sp);
        t.write(acc, wpc);  // accumulator starts least-optimal
        Cell acc_value = kernel.least_optimal();
        for (int k = 0; k < j - i; ++k) {
            const int li = i, lj = i + k, ri = i + k + 1, rj = j;
            Addr left, right;
            if (lj - li >= rj - ri) {
                left = self(self, li, lj, sp + 1);
                right = self(self, ri, rj, sp + 2);
            } else {
                right = self(self, ri, rj, sp + 1);
                left = self(self, li, lj, sp + 2);
            }
            t.read(left, wpc);
            t.read(right, wpc);
            Cell q = kernel.combine(value(li, lj), value(ri, rj), t, ctx_base);
            t.read(acc, wpc);
            acc_value = kernel.aggregate(acc_value, q);
            t.write(acc, wpc);
        }
        return acc;
    };
    walk(walk, 1, n, 0);

    return {value(1, n), max_sp + 1};
}

}  // namespace dpio
