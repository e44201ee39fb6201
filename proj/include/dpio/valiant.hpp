#pragma once

// Cache-oblivious DP closure: matrix-multiply-and-accumulate over the
// combine/aggregate algebra, the star recursion that closes a matrix whose
// top-left and bottom-right halves are already closed, and the full
// divide-and-conquer closure. Works for any kernel; all table accesses are
// traced.

#include <cstdint>
#include <vector>

#include "dpio/closure.hpp"
#include "dpio/kernels.hpp"
#include "dpio/tri_matrix.hpp"

namespace dpio {

enum class CellState : std::uint8_t { Untouched, Partial, Closed };

// Per-cell accumulation state, maintained by the closure engine. Closing is
// one-shot: a cell that transitions Closed -> Partial would mean a value was
// recomputed, which the schedule must never do.
class StateMap {
  public:
    explicit StateMap(int dim) : dim_(dim), s_(static_cast<std::size_t>(dim) * dim, CellState::Untouched) {}

    CellState get(int i, int j) const { return s_[idx(i, j)]; }

    void mark_partial(int i, int j) {
        auto& st = s_[idx(i, j)];
        if (st == CellState::Closed) throw PreconditionViolation("write into a closed cell");
        st = CellState::Partial;
    }

    void mark_closed(int i, int j) {
        auto& st = s_[idx(i, j)];
        if (st == CellState::Closed) throw PreconditionViolation("cell closed twice");
        st = CellState::Closed;
    }

    bool closed(int i, int j) const { return s_[idx(i, j)] == CellState::Closed; }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i - 1) * dim_ + (j - 1); }
    int dim_;
    std::vector<CellState> s_;
};

namespace detail {

// Sub-product issue order for the 8-way MMA split: consecutive steps share
// one operand block (B row or C column), the usual cache-oblivious order.
// Entries are {a_half_r, a_half_c, b_half_c(=c_half_r), 0} in half indices.
struct MmaStep { int ar, ac, k; };
inline constexpr MmaStep kMmaOrder[8] = {
    {1, 1, 1}, {1, 2, 1}, {1, 2, 2}, {1, 1, 2},
    {2, 1, 2}, {2, 2, 2}, {2, 2, 1}, {2, 1, 1},
};

template <class K>
void mma_rec(const K& kernel, TriMatrix<typename K::Cell>& m, int ar, int ac, int br, int bc,
             int cr, int cc, int d, Tracer& t, Addr ctx, StateMap* states) {
    if (d == 1) {
        auto q = kernel.combine(m.get(br + 1, bc + 1, t), m.get(cr + 1, cc + 1, t), t, ctx);
        auto acc = kernel.aggregate(m.get(ar + 1, ac + 1, t), q);
        if (states) states->mark_partial(ar + 1, ac + 1);
        m.set(ar + 1, ac + 1, acc, t);
        return;
    }
    const int h = d / 2;
    for (const auto& s : kMmaOrder) {
        const int i = (s.ar - 1) * h, j = (s.ac - 1) * h, k = (s.k - 1) * h;
        mma_rec(kernel, m, ar + i, ac + j, br + i, bc + k, cr + k, cc + j, h, t, ctx, states);
    }
}

}  // namespace detail

// A <- A + B * C over the kernel algebra: A(i,j) aggregates
// combine(B(i,k), C(k,j)) for all k, by 8-way recursive splitting down to
// single cells. A must not overlap B or C.
template <class K>
void mma(const K& kernel, const QuadView<typename K::Cell>& a, const QuadView<typename K::Cell>& b,
         const QuadView<typename K::Cell>& c, Tracer& t, Addr ctx_base = 0, StateMap* states = nullptr) {
    if (a.dim() != b.dim() || a.dim() != c.dim() || !is_pow2(static_cast<std::uint64_t>(a.dim())))
        throw DimMismatch("mma operands must be equal power-of-two dims");
    if (a.overlaps(b) || a.overlaps(c)) throw OverlappingViews("mma accumulator aliases an operand");
    detail::mma_rec(kernel, a.matrix(), a.row0(), a.col0(), b.row0(), b.col0(), c.row0(), c.col0(),
                    a.dim(), t, ctx_base, states);
}

namespace detail {

// Star recursion over the composite index set [a, a+h) u [b, b+h). The four
// recursive calls cover the quarter pairs; the four MMA calls feed each
// top-right block with the splits that fall outside the sub-composites.
template <class K>
void star_rec(const K& kernel, TriMatrix<typename K::Cell>& m, int a, int b, int h, Tracer& t,
              Addr ctx, StateMap* states) {
    using Cell = typename K::Cell;
    if (h == 1) {
        if (states && !states->closed(a + 1, b + 1)) states->mark_closed(a + 1, b + 1);
        return;
    }
    const int q = h / 2;
    auto rect = [&](int r, int c) { return QuadView<Cell>(m, r, c, q); };
    star_rec(kernel, m, a + q, b, q, t, ctx, states);
    mma(kernel, rect(a, b), rect(a, a + q), rect(a + q, b), t, ctx, states);
    star_rec(kernel, m, a, b, q, t, ctx, states);
    mma(kernel, rect(a + q, b + q), rect(a + q, b), rect(b, b + q), t, ctx, states);
    star_rec(kernel, m, a + q, b + q, q, t, ctx, states);
    mma(kernel, rect(a, b + q), rect(a, a + q), rect(a + q, b + q), t, ctx, states);
    mma(kernel, rect(a, b + q), rect(a, b), rect(b, b + q), t, ctx, states);
    star_rec(kernel, m, a, b + q, q, t, ctx, states);
}

inline void require_closed_block(const StateMap& states, int r0, int d) {
    for (int u = 1; u < d; ++u)
        for (int v = u + 1; v <= d; ++v)
            if (!states.closed(r0 + u, r0 + v))
                throw PreconditionViolation("star precondition: diagonal half not closed");
}

}  // namespace detail

// Closes a diagonal view whose top-left and bottom-right half closures are
// already complete. The precondition is checked against the engine's closed
// bitmap when one is attached; cell values cannot distinguish "not yet
// computed" from a genuinely infeasible subproblem, so they are not used.
template <class K>
void valiant_star(const K& kernel, const QuadView<typename K::Cell>& x, Tracer& t, Addr ctx_base = 0,
                  StateMap* states = nullptr) {
    if (x.dim() < 2 || !is_pow2(static_cast<std::uint64_t>(x.dim())))
        throw DimMismatch("star needs a power-of-two dim >= 2");
    if (x.row0() != x.col0()) throw PreconditionViolation("star operates on a diagonal view");
    if (states && x.dim() > 2) {
        detail::require_closed_block(*states, x.row0(), x.dim() / 2);
        detail::require_closed_block(*states, x.row0() + x.dim() / 2, x.dim() / 2);
    }
    detail::star_rec(kernel, x.matrix(), x.row0(), x.row0() + x.dim() / 2, x.dim() / 2, t, ctx_base, states);
}

namespace detail {

template <class K>
void closure_rec(const K& kernel, TriMatrix<typename K::Cell>& m, int off, int d, Tracer& t,
                 Addr ctx, StateMap* states) {
    if (d == 2) return;  // the lone payload cell is an input
    closure_rec(kernel, m, off, d / 2, t, ctx, states);
    closure_rec(kernel, m, off + d / 2, d / 2, t, ctx, states);
    if (states) {
        require_closed_block(*states, off, d / 2);
        require_closed_block(*states, off + d / 2, d / 2);
    }
    star_rec(kernel, m, off, off + d / 2, d / 2, t, ctx, states);
}

}  // namespace detail

// Full cache-oblivious closure: close both halves recursively, then join
// them with one star pass.
template <class K>
ClosureRun<K> valiant_closure(const K& kernel, Layout layout = Layout::RowMajor, Tracer t = Tracer{},
                              StateMap* states_out = nullptr) {
    AddressSpace space;
    Addr ctx_base = space.alloc(kernel.context_words());
    const int m = static_cast<int>(kernel.input_count());
    const int dim = next_pow2(m + 1);
    auto x = new_padded(kernel, layout, space.alloc(static_cast<std::uint64_t>(dim) * dim * K::kWordsPerCell));
    StateMap states(dim);
    for (int i = 1; i < dim; ++i) states.mark_closed(i, i + 1);  // inputs and superdiagonal padding
    detail::closure_rec(kernel, x, 0, dim, t, ctx_base, &states);
    if (states_out) *states_out = states;
    auto solution = extract_solution<K>(x, kernel.input_count());
    return {std::move(x), solution, ctx_base};
}

}  // namespace dpio
