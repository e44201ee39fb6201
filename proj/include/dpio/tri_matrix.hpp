#pragma once

// Power-of-two padded square matrix hosting the DP table. S(i,j) lives at
// row i, column j+1. Every element access resolves to a linear word address
// (row-major or Morton) so it can be fed to the cache simulator.

#include <string>
#include <vector>

#include "dpio/cache_sim.hpp"
#include "dpio/error.hpp"
#include "dpio/util.hpp"

namespace dpio {

enum class Layout { RowMajor, Morton };

inline const char* layout_name(Layout l) { return l == Layout::RowMajor ? "rowmajor" : "morton"; }

// 0-based cell index within a dim x dim matrix; bijective for both layouts.
inline std::uint64_t linear_index(Layout layout, int dim, int i, int j) {
    if (layout == Layout::RowMajor)
        return static_cast<std::uint64_t>(i - 1) * dim + (j - 1);
    return morton_interleave(static_cast<std::uint64_t>(j - 1), static_cast<std::uint64_t>(i - 1));
}

template <typename CellT>
class TriMatrix {
  public:
    using Cell = CellT;

    TriMatrix(int dim, Layout layout, std::size_t words_per_cell, Addr base, Cell fill)
        : dim_(dim), layout_(layout), wpc_(words_per_cell), base_(base),
          cells_(static_cast<std::size_t>(dim) * dim, fill) {
        if (dim < 2 || !is_pow2(static_cast<std::uint64_t>(dim))) throw BadGeometry("matrix dim must be a power of two >= 2");
    }

    int dim() const { return dim_; }
    Layout layout() const { return layout_; }
    std::size_t words_per_cell() const { return wpc_; }
    Addr base() const { return base_; }
    std::uint64_t words() const { return static_cast<std::uint64_t>(dim_) * dim_ * wpc_; }

    Addr address_of(int i, int j) const {
        check_bounds(i, j);
        return base_ + linear_index(layout_, dim_, i, j) * wpc_;
    }

    Cell get(int i, int j, Tracer& t) const {
        check_bounds(i, j);
        std::uint64_t idx = linear_index(layout_, dim_, i, j);
        t.read(base_ + idx * wpc_, wpc_);
        return cells_[idx];
    }

    void set(int i, int j, const Cell& v, Tracer& t) {
        check_bounds(i, j);
        std::uint64_t idx = linear_index(layout_, dim_, i, j);
        t.write(base_ + idx * wpc_, wpc_);
        cells_[idx] = v;
    }

    // Untraced accessors for setup and verification.
    const Cell& peek(int i, int j) const { check_bounds(i, j); return cells_[linear_index(layout_, dim_, i, j)]; }
    void poke(int i, int j, const Cell& v) { check_bounds(i, j); cells_[linear_index(layout_, dim_, i, j)] = v; }

  private:
    void check_bounds(int i, int j) const {
        if (i < 1 || j < 1 || i > dim_ || j > dim_)
            throw OutOfBounds("cell (" + std::to_string(i) + "," + std::to_string(j) + ") outside dim " +
                              std::to_string(dim_));
    }

    int dim_;
    Layout layout_;
    std::size_t wpc_;
    Addr base_;
    std::vector<Cell> cells_;
};

// Square window into a TriMatrix. Views alias the parent and must not
// outlive it.
template <typename CellT>
class QuadView {
  public:
    QuadView(TriMatrix<CellT>& m, int row0, int col0, int dim)
        : m_(&m), row0_(row0), col0_(col0), dim_(dim) {
        if (row0 < 0 || col0 < 0 || dim < 1 || row0 + dim > m.dim() || col0 + dim > m.dim())
            throw OutOfBounds("view outside parent matrix");
    }

    int dim() const { return dim_; }
    int row0() const { return row0_; }
    int col0() const { return col0_; }
    TriMatrix<CellT>& matrix() const { return *m_; }

    CellT get(int r, int c, Tracer& t) const { return m_->get(row0_ + r, col0_ + c, t); }
    void set(int r, int c, const CellT& v, Tracer& t) const { m_->set(row0_ + r, col0_ + c, v, t); }

    // The (r,c)-th of the 16 equally sized submatrices, r,c in 1..4.
    QuadView quadrant(int r, int c) const {
        if (dim_ % 4 != 0) throw IndivisibleDim("dim not divisible by 4");
        if (r < 1 || r > 4 || c < 1 || c > 4) throw OutOfBounds("quadrant index");
        int q = dim_ / 4;
        return QuadView(*m_, row0_ + (r - 1) * q, col0_ + (c - 1) * q, q);
    }

    // The (r,c)-th of the 4 half-dim submatrices, r,c in 1..2.
    QuadView half(int r, int c) const {
        if (dim_ % 2 != 0) throw IndivisibleDim("dim not divisible by 2");
        if (r < 1 || r > 2 || c < 1 || c > 2) throw OutOfBounds("half index");
        int h = dim_ / 2;
        return QuadView(*m_, row0_ + (r - 1) * h, col0_ + (c - 1) * h, h);
    }

    bool overlaps(const QuadView& o) const {
        return m_ == o.m_ && row0_ < o.row0_ + o.dim_ && o.row0_ < row0_ + dim_ &&
               col0_ < o.col0_ + o.dim_ && o.col0_ < col0_ + dim_;
    }

  private:
    TriMatrix<CellT>* m_;
    int row0_, col0_, dim_;
};

template <typename CellT>
QuadView<CellT> full_view(TriMatrix<CellT>& m) {
    return QuadView<CellT>(m, 0, 0, m.dim());
}

// Padded table for a kernel: dim is the smallest power of two >= m+1, input
// i sits at X(i, i+1), everything else (padding included) holds the
// least-optimal element. Initialization is setup, not algorithm work, so it
// is untraced; the algorithms' own reads and writes are what gets counted.
template <class K>
TriMatrix<typename K::Cell> new_padded(const K& kernel, Layout layout, Addr base = 0) {
    int m = static_cast<int>(kernel.input_count());
    if (m < 1) throw EmptyInstance("kernel has no inputs");
    int dim = next_pow2(m + 1);
    if (dim < 2) dim = 2;
    TriMatrix<typename K::Cell> x(dim, layout, K::kWordsPerCell, base, kernel.least_optimal());
    for (int i = 1; i <= m; ++i) x.poke(i, i + 1, kernel.input(i));
    return x;
}

template <class K>
typename K::Cell extract_solution(const TriMatrix<typename K::Cell>& x, std::size_t m) {
    return x.peek(1, static_cast<int>(m) + 1);
}

}  // namespace dpio
