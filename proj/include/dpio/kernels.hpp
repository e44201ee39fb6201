#pragma once

// Combine/aggregate algebras for the three semiring DP kernels: matrix chain
// multiplication (MCM), optimal convex polygon triangulation (OPT), and
// optimal binary search trees (BST). Kernels are immutable after construction
// and safe to share; closures own their tables exclusively.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpio/cache_sim.hpp"
#include "dpio/error.hpp"

namespace dpio {

enum class KernelKind { Mcm, Opt, Bst };

// Cost triple (a, b, c): a and b are strictly positive endpoints (matrix
// dimensions for MCM, index endpoints for OPT), c is the accumulated cost.
// a == 0 encodes the least-optimal (absorbing) element.
struct CostTriple {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t cost = 0;

    bool least_optimal() const { return a == 0; }
    static CostTriple least() { return {}; }
    bool operator==(const CostTriple&) const = default;
};

// BST cell: cost of an optimal subtree over key range [lo, hi], with the
// range carried so combine can look up the prefix-cost table. lo == 0
// encodes the least-optimal element.
struct BstCell {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    double cost = 0.0;

    bool least_optimal() const { return lo == 0; }
    static BstCell least() { return {}; }
    bool operator==(const BstCell&) const = default;
};

// C(i,j) = sum_{l=i..j-1} p_l + sum_{l=i..j} q_l, built by the recursion
// C(i,j) = C(i,j-1) + p_{j-1} + q_j. Stored row-major as an n x n table with
// only i <= j populated. Throws ProbabilityMismatch unless |q| = |p|+1 and
// the probabilities sum to 1 within 1e-9.
inline std::vector<double> bst_prefix_costs(const std::vector<double>& p, const std::vector<double>& q) {
    if (q.size() != p.size() + 1) throw ProbabilityMismatch("need |q| = |p| + 1");
    double total = 0.0;
    for (double v : p) total += v;
    for (double v : q) total += v;
    if (std::abs(total - 1.0) > 1e-9) throw ProbabilityMismatch("probabilities must sum to 1");
    const std::size_t n = q.size();
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        c[(i - 1) * n + (i - 1)] = q[i - 1];
        for (std::size_t j = i + 1; j <= n; ++j)
            c[(i - 1) * n + (j - 1)] = c[(i - 1) * n + (j - 2)] + p[j - 2] + q[j - 1];
    }
    return c;
}

// Cells occupy one full 8-word cache line in the simulated address space.
// Packing the 3-word triples at their payload size lets consecutive table
// columns share lines, which hands the unblocked triple loop a measurable
// M-dependent discount at B=8 and muddies the blocked-vs-unblocked contrast
// the benchmarks exist to show.
inline constexpr std::size_t kCellLineWords = 8;

class McmKernel {
  public:
    using Cell = CostTriple;
    static constexpr KernelKind kKind = KernelKind::Mcm;
    static constexpr std::size_t kWordsPerCell = kCellLineWords;

    explicit McmKernel(std::vector<std::uint64_t> dims) : dims_(std::move(dims)) {
        if (dims_.size() < 2) throw EmptyInstance("matrix chain needs at least two dimensions");
    }

    std::size_t input_count() const { return dims_.size() - 1; }
    Cell input(std::size_t i) const { return {dims_[i - 1], dims_[i], 0}; }
    Cell least_optimal() const { return Cell::least(); }

    Cell combine(const Cell& x, const Cell& y, Tracer&, Addr) const {
        if (x.least_optimal() || y.least_optimal() || x.b != y.a) return Cell::least();
        return {x.a, y.b, x.a * x.b * y.b + x.cost + y.cost};
    }

    Cell aggregate(const Cell& x, const Cell& y) const {
        if (x.least_optimal()) return y;
        if (y.least_optimal()) return x;
        if (x.a != y.a || x.b != y.b) return Cell::least();
        return y.cost < x.cost ? y : x;
    }

    std::size_t context_words() const { return 0; }
    const std::vector<std::uint64_t>& dims() const { return dims_; }

  private:
    std::vector<std::uint64_t> dims_;
};

// Triangle costs default to the rounded Euclidean perimeter of the 2D
// coordinates; an explicit dense table indexed by vertex triple is also
// accepted. Costs are integral either way so the algebra stays exact.
class OptKernel {
  public:
    using Cell = CostTriple;
    static constexpr KernelKind kKind = KernelKind::Opt;
    static constexpr std::size_t kWordsPerCell = kCellLineWords;

    static OptKernel from_coords(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() != ys.size()) throw EmptyInstance("coordinate lists differ in length");
        if (xs.size() < 2) throw EmptyInstance("polygon needs at least two vertices");
        OptKernel k;
        k.xs_ = std::move(xs);
        k.ys_ = std::move(ys);
        k.n_ = k.xs_.size() - 1;
        return k;
    }

    // table[(a*(n+1)+b)*(n+1)+c] = w(v_a, v_b, v_c), vertices 0..n.
    static OptKernel from_table(std::size_t vertex_count, std::vector<std::uint64_t> table) {
        if (vertex_count < 2) throw EmptyInstance("polygon needs at least two vertices");
        if (table.size() != vertex_count * vertex_count * vertex_count)
            throw EmptyInstance("dense cost table has wrong size");
        OptKernel k;
        k.table_ = std::move(table);
        k.n_ = vertex_count - 1;
        return k;
    }

    std::size_t input_count() const { return n_; }
    Cell input(std::size_t i) const { return {i, i + 1, 0}; }  // vertex range [i-1, i] shifted by +1
    Cell least_optimal() const { return Cell::least(); }

    Cell combine(const Cell& x, const Cell& y, Tracer& t, Addr ctx_base) const {
        if (x.least_optimal() || y.least_optimal() || x.b != y.a) return Cell::least();
        // Stored endpoints are vertex index + 1 so that 0 stays reserved.
        std::uint64_t va = x.a - 1, vb = x.b - 1, vc = y.b - 1;
        return {x.a, y.b, x.cost + y.cost + triangle_cost(va, vb, vc, t, ctx_base)};
    }

    Cell aggregate(const Cell& x, const Cell& y) const {
        if (x.least_optimal()) return y;
        if (y.least_optimal()) return x;
        if (x.a != y.a || x.b != y.b) return Cell::least();
        return y.cost < x.cost ? y : x;
    }

    std::size_t context_words() const {
        return table_.empty() ? 2 * (n_ + 1) : (n_ + 1) * (n_ + 1) * (n_ + 1);
    }

    std::uint64_t triangle_cost(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                Tracer& t, Addr ctx_base) const {
        if (!table_.empty()) {
            t.read(ctx_base + (a * (n_ + 1) + b) * (n_ + 1) + c);
            return table_[(a * (n_ + 1) + b) * (n_ + 1) + c];
        }
        t.read(ctx_base + 2 * a, 2);
        t.read(ctx_base + 2 * b, 2);
        t.read(ctx_base + 2 * c, 2);
        auto dist = [&](std::uint64_t u, std::uint64_t v) {
            double dx = xs_[u] - xs_[v], dy = ys_[u] - ys_[v];
            return std::sqrt(dx * dx + dy * dy);
        };
        return static_cast<std::uint64_t>(std::llround(dist(a, b) + dist(b, c) + dist(a, c)));
    }

  private:
    OptKernel() = default;
    std::size_t n_ = 0;
    std::vector<double> xs_, ys_;
    std::vector<std::uint64_t> table_;
};

class BstKernel {
  public:
    using Cell = BstCell;
    static constexpr KernelKind kKind = KernelKind::Bst;
    static constexpr std::size_t kWordsPerCell = kCellLineWords;

    BstKernel(std::vector<double> p, std::vector<double> q)
        : p_(std::move(p)), q_(std::move(q)), prefix_(bst_prefix_costs(p_, q_)) {
        if (q_.empty()) throw EmptyInstance("BST instance needs at least one q value");
    }

    std::size_t input_count() const { return q_.size(); }
    Cell input(std::size_t i) const {
        return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), q_[i - 1]};
    }
    Cell least_optimal() const { return Cell::least(); }

    Cell combine(const Cell& x, const Cell& y, Tracer& t, Addr ctx_base) const {
        if (x.least_optimal() || y.least_optimal() || y.lo != x.hi + 1) return Cell::least();
        const std::size_t n = q_.size();
        t.read(ctx_base + (x.lo - 1) * n + (y.hi - 1));
        return {x.lo, y.hi, x.cost + y.cost + prefix_[(x.lo - 1) * n + (y.hi - 1)]};
    }

    Cell aggregate(const Cell& x, const Cell& y) const {
        if (x.least_optimal()) return y;
        if (y.least_optimal()) return x;
        if (x.lo != y.lo || x.hi != y.hi) return Cell::least();
        return y.cost < x.cost ? y : x;
    }

    std::size_t context_words() const { return q_.size() * q_.size(); }
    double prefix_cost(std::size_t i, std::size_t j) const { return prefix_[(i - 1) * q_.size() + (j - 1)]; }

  private:
    std::vector<double> p_, q_;
    std::vector<double> prefix_;
};

// The per-operation example lists index inputs from 1.
template <class K>
std::vector<typename K::Cell> init_inputs(const K& kernel) {
    if (kernel.input_count() < 1) throw EmptyInstance("kernel has no inputs");
    std::vector<typename K::Cell> cells;
    cells.reserve(kernel.input_count());
    for (std::size_t i = 1; i <= kernel.input_count(); ++i) cells.push_back(kernel.input(i));
    return cells;
}

}  // namespace dpio
