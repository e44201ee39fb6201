#pragma once

// CYK membership testing: the classic quadruple loop and the cache-oblivious
// closure that runs one boolean matrix-multiply-and-accumulate per distinct
// right-hand-side group on bit planes.

#include <cstdint>
#include <string>
#include <vector>

#include "dpio/cache_sim.hpp"
#include "dpio/grammar.hpp"
#include "dpio/tri_matrix.hpp"
#include "dpio/valiant.hpp"

namespace dpio {

// One-hot variable/placeholder set, s = 64 bits per machine word. Bits
// beyond the grammar's plane count stay zero.
struct BitCell {
    std::vector<std::uint64_t> words;

    explicit BitCell(int planes = 0) : words((planes + 63) / 64, 0) {}
    bool test(int v) const { return (words[v >> 6] >> (v & 63)) & 1; }
    void set(int v) { words[v >> 6] |= std::uint64_t{1} << (v & 63); }
    bool operator==(const BitCell&) const = default;
};

// cell i (1-based) has variable bit A set iff (A -> w_i) is a terminal rule.
std::vector<BitCell> encode_terminals(const Grammar& g, const std::vector<char32_t>& w);

// Cell-major table for the quadruple-loop algorithm: each of the n*n cells
// holds ceil(planes/64) words, addressed row-major from `base`.
class CykTable {
  public:
    CykTable(int n, int planes, Addr base);

    int n() const { return n_; }
    std::size_t cell_words() const { return cell_words_; }
    Addr base() const { return base_; }
    std::uint64_t words() const { return words_.size(); }

    bool get_bit(int i, int j, int v, Tracer& t) const;
    void set_bit(int i, int j, int v, Tracer& t);
    BitCell variable_set(const Grammar& g, int i, int j) const;  // untraced, variables only

  private:
    std::size_t word_index(int i, int j, int v) const;
    int n_;
    int planes_;
    std::size_t cell_words_;
    Addr base_;
    std::vector<std::uint64_t> words_;
};

struct NaiveCykResult {
    bool accept = false;
    int n = 0;
    CykTable table;
};

// Algorithm: epsilon short-circuit for the empty string, terminal encoding,
// then for every span and split try every binary rule.
NaiveCykResult naive_cyk(const Grammar& g, const std::vector<char32_t>& w, Tracer t = Tracer{});
NaiveCykResult naive_cyk(const Grammar& g, const std::string& utf8, Tracer t = Tracer{});

// Plane-major bit matrix: one dim x dim bit plane per variable/placeholder,
// 64 cells per word, row-major or Morton order inside each plane. Plane p of
// the matrix is the address range [base + p*plane_words, ...).
class CykPlaneMatrix {
  public:
    CykPlaneMatrix(int dim, int planes, Layout layout, Addr base);

    int dim() const { return dim_; }
    int planes() const { return planes_; }
    Layout layout() const { return layout_; }
    Addr base() const { return base_; }
    std::uint64_t plane_words() const { return plane_words_; }
    std::uint64_t words() const { return bits_.size(); }

    Addr address_of(int plane, int i, int j) const;
    bool get_bit(int plane, int i, int j, Tracer& t) const;
    void set_bit(int plane, int i, int j, Tracer& t);

    bool peek_bit(int plane, int i, int j) const;
    void poke_bit(int plane, int i, int j);
    BitCell variable_set(const Grammar& g, int i, int j) const;  // untraced, variables only

  private:
    std::uint64_t bit_index(int i, int j) const;
    int dim_;
    int planes_;
    Layout layout_;
    Addr base_;
    std::uint64_t plane_words_;
    std::vector<std::uint64_t> bits_;
};

// Square window into one plane.
struct PlaneView {
    CykPlaneMatrix* m;
    int plane;
    int row0, col0, dim;
};

// A |= B * C over (AND, OR): A(i,j) gets set when B(i,k) and C(k,j) hold for
// some k. Recursive structure identical to the generic MMA, base case one
// bit.
void boolean_mma(const PlaneView& a, const PlaneView& b, const PlaneView& c, Tracer& t,
                 StateMap* states = nullptr);

// Traced word layout of the grammar tables used by the closure: one record
// of 3 + |lhs| words per group.
struct GroupTableAddrs {
    Addr base = 0;
    std::vector<std::uint64_t> record_offset;
};

GroupTableAddrs layout_group_table(const Grammar& g, AddressSpace& space);

// Star pass over a diagonal view of the plane matrix whose two half
// closures are complete: one boolean MMA per group at each recursion node,
// and at single-cell composites the placeholder planes are OR-folded into
// every left-hand-side variable plane of their group.
void cyk_star(CykPlaneMatrix& x, const Grammar& g, const GroupTableAddrs& groups, int row0, int dim,
              Tracer& t, StateMap* states = nullptr);

struct CykClosureResult {
    bool accept = false;
    int n = 0;
    CykPlaneMatrix table;
};

CykClosureResult cyk_closure(const Grammar& g, const std::vector<char32_t>& w,
                             Layout layout = Layout::RowMajor, Tracer t = Tracer{});
CykClosureResult cyk_closure(const Grammar& g, const std::string& utf8, Layout layout = Layout::RowMajor,
                             Tracer t = Tracer{});

}  // namespace dpio
