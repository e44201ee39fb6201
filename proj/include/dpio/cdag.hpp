#pragma once

// Computation DAGs for the closure recurrence: the G(n) family (one
// accumulation tree per subproblem, leaves joining pairs of smaller
// subproblems) and its CYK refinement (variable roots, grammar roots).
// Includes the W-cover, interaction counting, dominator computation via min
// vertex cut, and the counting formulas the lower bounds rest on.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpio/error.hpp"
#include "dpio/grammar.hpp"
#include "dpio/util.hpp"

namespace dpio {

enum class VertexRole : std::uint8_t { Input, LVertex, TreeInternal, Root, VarRoot, GrammarRoot };

const char* role_name(VertexRole r);

enum class TreeShape { Balanced, LeftChain };

struct CdagVertex {
    int i = 0, j = 0;          // subproblem
    VertexRole role = VertexRole::Input;
    int owner = -1;            // id of the accumulation-tree root this vertex belongs to
    int aux = -1;              // leaf index, or variable/group id in the CYK graph
};

class Cdag {
  public:
    int n() const { return n_; }
    std::size_t vertex_count() const { return verts_.size(); }
    const CdagVertex& vertex(int id) const { return verts_[id]; }
    const std::vector<int>& preds(int id) const { return preds_[id]; }

    // R-vertex (accumulation-tree top) of subproblem (i,j); for the CYK
    // graph this is the variable-root block and vr_id must be used instead.
    int root_id(int i, int j) const { return root_id_[idx(i, j)]; }
    bool is_r_vertex(int id) const {
        const auto& v = verts_[id];
        return root_id_[idx(v.i, v.j)] == id;
    }

    // Leaves of the tree owned by subproblem (i,j), in split order.
    std::vector<int> leaf_ids(int i, int j) const;

    // CYK graph only.
    bool is_cyk() const { return var_count_ > 0; }
    int var_count() const { return var_count_; }
    int vr_id(int i, int j, int var) const { return vr_id_[idx(i, j) * var_count_ + var]; }
    const std::vector<int>& gr_ids(int i, int j) const { return gr_ids_[idx(i, j)]; }
    std::vector<int> gr_leaf_ids(int gr) const;

    std::size_t count_role(VertexRole r) const;
    std::size_t r_vertex_count() const;

    friend Cdag build_cdag(int n, TreeShape shape);
    friend Cdag build_cyk_cdag(int n, const Grammar& g);

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i - 1) * n_ + (j - 1); }
    int add_vertex(int i, int j, VertexRole role, std::vector<int> preds, int aux = -1);
    int build_tree(const std::vector<int>& leaves, TreeShape shape, int i, int j, VertexRole top_role);

    int n_ = 0;
    int var_count_ = 0;
    std::vector<CdagVertex> verts_;
    std::vector<std::vector<int>> preds_;
    std::vector<int> root_id_;
    std::vector<int> first_leaf_;                   // first leaf id per subproblem (G(n))
    std::vector<int> vr_id_;                        // (i,j,var) -> id (CYK)
    std::vector<std::vector<int>> gr_ids_;          // per subproblem (CYK)
    std::vector<std::vector<int>> gr_first_leaf_;   // parallel to gr_ids_ (CYK)
};

// G(n): for every subproblem an accumulation tree whose k-th leaf has the
// roots of (i,i+k) and (i+k+1,j) as predecessors. Single-combination
// subproblems merge leaf and root into one vertex. 2 <= n <= 64.
Cdag build_cdag(int n, TreeShape shape = TreeShape::Balanced);

// CYK refinement at one vertex per variable: per subproblem |V| variable
// roots and one grammar root per distinct-RHS group, each grammar root
// accumulating j-i leaves wired to the group's right-hand-side variable
// roots. Caps at 1e5 vertices.
Cdag build_cyk_cdag(int n, const Grammar& g);

// W_i = r_{i+1} u c_i over R-vertices (variable roots for CYK), 1 <= i <= n-1.
struct WCover {
    std::vector<std::vector<int>> sets;  // sets[i-1] = W_i
};
WCover w_cover(const Cdag& g);

struct InteractionReport {
    std::size_t pair_count = 0;
    // (column member, row member, leaf vertex) triples
    std::vector<std::array<int, 3>> pairs;
};

// Interacting pairs inside X, which must be a subset of W_i. A pair is one
// column-side and one row-side vertex whose combination leaf exists; the
// report keeps the witnessing leaf so callers can check distinctness.
InteractionReport interacting_pairs(const Cdag& g, int i, const std::vector<int>& x);

// All R-vertex (or variable-root) predecessors of the given leaves.
std::vector<int> predecessor_roots(const Cdag& g, const std::vector<int>& leaves);

// Minimum vertex cut separating the inputs from A, by unit-capacity
// max-flow on the split-vertex graph. Vertices of A itself may be cut.
int min_dominator(const Cdag& g, const std::vector<int>& a);

// Number of leaves whose two predecessor subproblems both span at least x:
// (n-2x-1)(n-2x)(n-2x+1)/6 for 0 <= 2x < n.
std::int64_t count_L_ge(int n, int x);
std::int64_t count_L_ge_enumerated(const Cdag& g, int x);

// Edge-list export with a vertex-role header.
void export_cdag(const Cdag& g, std::ostream& out);

}  // namespace dpio
