#include "dpio/cdag.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>
#include <set>

namespace dpio {

const char* role_name(VertexRole r) {
    switch (r) {
        case VertexRole::Input: return "input";
        case VertexRole::LVertex: return "leaf";
        case VertexRole::TreeInternal: return "internal";
        case VertexRole::Root: return "root";
        case VertexRole::VarRoot: return "var_root";
        case VertexRole::GrammarRoot: return "grammar_root";
    }
    return "?";
}

int Cdag::add_vertex(int i, int j, VertexRole role, std::vector<int> preds, int aux) {
    int id = static_cast<int>(verts_.size());
    verts_.push_back({i, j, role, -1, aux});
    preds_.push_back(std::move(preds));
    return id;
}

// Folds leaves into an accumulation tree, returning the top vertex, which
// gets `top_role`. A single leaf is its own top.
int Cdag::build_tree(const std::vector<int>& leaves, TreeShape shape, int i, int j,
                     VertexRole top_role) {
    if (leaves.size() == 1) return leaves[0];
    if (shape == TreeShape::LeftChain) {
        int acc = leaves[0];
        for (std::size_t k = 1; k < leaves.size(); ++k) {
            VertexRole role = k + 1 == leaves.size() ? top_role : VertexRole::TreeInternal;
            acc = add_vertex(i, j, role, {acc, leaves[k]});
        }
        return acc;
    }
    struct Builder {
        Cdag& g;
        const std::vector<int>& ls;
        int i, j;
        int operator()(std::size_t lo, std::size_t hi, VertexRole role) {
            if (hi - lo == 1) return ls[lo];
            std::size_t mid = (lo + hi) / 2;
            int l = (*this)(lo, mid, VertexRole::TreeInternal);
            int r = (*this)(mid, hi, VertexRole::TreeInternal);
            return g.add_vertex(i, j, role, {l, r});
        }
    };
    return Builder{*this, leaves, i, j}(0, leaves.size(), top_role);
}

Cdag build_cdag(int n, TreeShape shape) {
    if (n < 2 || n > 64) throw TooLarge("G(n) builder supports 2 <= n <= 64");
    Cdag g;
    g.n_ = n;
    g.root_id_.assign(static_cast<std::size_t>(n) * n, -1);
    g.first_leaf_.assign(static_cast<std::size_t>(n) * n, -1);

    for (int i = 1; i <= n; ++i) {
        int id = g.add_vertex(i, i, VertexRole::Input, {});
        g.verts_[id].owner = id;
        g.root_id_[g.idx(i, i)] = id;
    }
    for (int d = 1; d < n; ++d) {
        for (int i = 1; i + d <= n; ++i) {
            const int j = i + d;
            std::vector<int> leaves;
            leaves.reserve(d);
            for (int k = 0; k < d; ++k)
                leaves.push_back(g.add_vertex(i, j, VertexRole::LVertex,
                                              {g.root_id(i, i + k), g.root_id(i + k + 1, j)}, k));
            g.first_leaf_[g.idx(i, j)] = leaves[0];
            int top = g.build_tree(leaves, shape, i, j, VertexRole::Root);
            g.root_id_[g.idx(i, j)] = top;
            for (int id = leaves[0]; id < static_cast<int>(g.verts_.size()); ++id)
                g.verts_[id].owner = top;
        }
    }
    return g;
}

Cdag build_cyk_cdag(int n, const Grammar& g) {
    if (n < 1) throw TooLarge("CYK CDAG needs n >= 1");
    const int nv = g.variable_count();
    const int gamma = g.gamma();
    std::uint64_t estimate = static_cast<std::uint64_t>(n) * (n + 1) / 2 * nv;
    for (int d = 1; d < n; ++d)
        estimate += static_cast<std::uint64_t>(n - d) * gamma * (2 * d);
    if (estimate > 100000) throw TooLarge("CYK CDAG would exceed 1e5 vertices");

    Cdag out;
    out.n_ = n;
    out.var_count_ = nv;
    out.root_id_.assign(static_cast<std::size_t>(n) * n, -1);
    out.vr_id_.assign(static_cast<std::size_t>(n) * n * nv, -1);
    out.gr_ids_.assign(static_cast<std::size_t>(n) * n, {});
    out.gr_first_leaf_.assign(static_cast<std::size_t>(n) * n, {});

    std::vector<std::vector<int>> groups_of(nv);
    for (int gi = 0; gi < gamma; ++gi)
        for (int lhs : g.groups()[gi].lhs) groups_of[lhs].push_back(gi);

    for (int i = 1; i <= n; ++i)
        for (int v = 0; v < nv; ++v) {
            int id = out.add_vertex(i, i, VertexRole::Input, {}, v);
            out.verts_[id].owner = id;
            out.vr_id_[out.idx(i, i) * nv + v] = id;
        }

    for (int d = 1; d < n; ++d) {
        for (int i = 1; i + d <= n; ++i) {
            const int j = i + d;
            auto& grs = out.gr_ids_[out.idx(i, j)];
            auto& gr_leaves = out.gr_first_leaf_[out.idx(i, j)];
            for (int gi = 0; gi < gamma; ++gi) {
                const auto& grp = g.groups()[gi];
                std::vector<int> leaves;
                leaves.reserve(d);
                for (int k = 0; k < d; ++k)
                    leaves.push_back(out.add_vertex(i, j, VertexRole::LVertex,
                                                    {out.vr_id(i, i + k, grp.rhs_first),
                                                     out.vr_id(i + k + 1, j, grp.rhs_second)},
                                                    k));
                // One-leaf trees still get a distinct grammar-root vertex:
                // the dim-2 placeholder-to-variable copy is a real operation.
                int gr = d == 1 ? out.add_vertex(i, j, VertexRole::GrammarRoot, {leaves[0]}, gi)
                                : out.build_tree(leaves, TreeShape::Balanced, i, j,
                                                 VertexRole::GrammarRoot);
                out.verts_[gr].aux = gi;
                for (int id = leaves[0]; id < static_cast<int>(out.verts_.size()); ++id)
                    out.verts_[id].owner = gr;
                grs.push_back(gr);
                gr_leaves.push_back(leaves[0]);
            }
            for (int v = 0; v < nv; ++v) {
                std::vector<int> feeders;
                for (int gi : groups_of[v]) feeders.push_back(grs[gi]);
                int vr;
                if (feeders.size() <= 1)
                    vr = out.add_vertex(i, j, VertexRole::VarRoot, feeders, v);
                else
                    vr = out.build_tree(feeders, TreeShape::Balanced, i, j, VertexRole::VarRoot);
                out.verts_[vr].role = VertexRole::VarRoot;
                out.verts_[vr].aux = v;
                out.verts_[vr].owner = vr;
                out.vr_id_[out.idx(i, j) * nv + v] = vr;
            }
        }
    }
    return out;
}

std::vector<int> Cdag::leaf_ids(int i, int j) const {
    if (is_cyk()) throw Error("per-subproblem leaves are grouped by grammar root here");
    std::vector<int> out;
    if (i == j) return out;
    int first = first_leaf_[idx(i, j)];
    for (int k = 0; k < j - i; ++k) out.push_back(first + k);
    return out;
}

std::vector<int> Cdag::gr_leaf_ids(int gr) const {
    const auto& v = verts_[gr];
    const auto& grs = gr_ids_[idx(v.i, v.j)];
    const auto& firsts = gr_first_leaf_[idx(v.i, v.j)];
    std::vector<int> out;
    for (std::size_t gi = 0; gi < grs.size(); ++gi)
        if (grs[gi] == gr)
            for (int k = 0; k < v.j - v.i; ++k) out.push_back(firsts[gi] + k);
    return out;
}

std::size_t Cdag::count_role(VertexRole r) const {
    std::size_t c = 0;
    for (const auto& v : verts_) c += v.role == r;
    return c;
}

std::size_t Cdag::r_vertex_count() const {
    std::size_t subproblems = static_cast<std::size_t>(n_) * (n_ + 1) / 2;
    return is_cyk() ? subproblems * var_count_ : subproblems;
}

WCover w_cover(const Cdag& g) {
    WCover out;
    const int n = g.n();
    out.sets.resize(n - 1);
    auto add_members = [&](std::vector<int>& set, int i, int j) {
        if (g.is_cyk())
            for (int v = 0; v < g.var_count(); ++v) set.push_back(g.vr_id(i, j, v));
        else
            set.push_back(g.root_id(i, j));
    };
    for (int i = 1; i <= n - 1; ++i) {
        auto& set = out.sets[i - 1];
        for (int j = i + 1; j <= n; ++j) add_members(set, i + 1, j);  // row r_{i+1}
        for (int k = 1; k <= i; ++k) add_members(set, k, i);          // column c_i
    }
    return out;
}

InteractionReport interacting_pairs(const Cdag& g, int i, const std::vector<int>& x) {
    const int n = g.n();
    if (i < 1 || i > n - 1) throw NotSingleCover("cover index out of range");
    std::vector<int> cols, rows;
    for (int id : x) {
        const auto& v = g.vertex(id);
        bool in_col = v.j == i && v.i <= i;
        bool in_row = v.i == i + 1;
        bool is_root = g.is_cyk()
                           ? v.role == VertexRole::VarRoot || v.role == VertexRole::Input
                           : g.is_r_vertex(id);
        if (!is_root || (!in_col && !in_row))
            throw NotSingleCover("vertex " + std::to_string(id) + " not in W_" + std::to_string(i));
        (in_col ? cols : rows).push_back(id);
    }

    InteractionReport rep;
    for (int u : cols) {
        for (int v : rows) {
            const auto& cu = g.vertex(u);
            const auto& rv = g.vertex(v);
            int leaf = -1;
            if (g.is_cyk()) {
                // The pair interacts when some group's right-hand side is
                // exactly (var(u), var(v)).
                for (int gr : g.gr_ids(cu.i, rv.j)) {
                    auto leaves = g.gr_leaf_ids(gr);
                    int cand = leaves[i - cu.i];
                    const auto& preds = g.preds(cand);
                    if (preds[0] == u && preds[1] == v) {
                        leaf = cand;
                        break;
                    }
                }
                if (leaf < 0) continue;
            } else {
                leaf = g.leaf_ids(cu.i, rv.j)[i - cu.i];
            }
            rep.pairs.push_back({u, v, leaf});
        }
    }
    rep.pair_count = rep.pairs.size();
    return rep;
}

std::vector<int> predecessor_roots(const Cdag& g, const std::vector<int>& leaves) {
    std::set<int> roots;
    for (int id : leaves) {
        if (g.vertex(id).role != VertexRole::LVertex) throw Error("vertex is not a leaf");
        for (int p : g.preds(id)) roots.insert(p);
    }
    return {roots.begin(), roots.end()};
}

namespace {

// Dinic max-flow; unit vertex capacities via the usual in/out splitting.
class Dinic {
  public:
    explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int u, int v, int cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += pushed;
        }
        return flow;
    }

  private:
    struct Edge { int to, next, cap; };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    int dfs(int u, int t, int limit) {
        if (u == t || limit == 0) return limit;
        for (int& e = it_[u]; e >= 0; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                int pushed = dfs(ed.to, t, std::min(limit, ed.cap));
                if (pushed > 0) {
                    ed.cap -= pushed;
                    edges_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_, level_, it_;
};

}  // namespace

int min_dominator(const Cdag& g, const std::vector<int>& a) {
    const int nv = static_cast<int>(g.vertex_count());
    if (nv > 10000) throw TooLarge("dominator computation capped at 1e4 vertices");
    const int inf = nv + 1;
    // v_in = 2v, v_out = 2v+1
    Dinic net(2 * nv + 2);
    const int s = 2 * nv, t = 2 * nv + 1;
    for (int v = 0; v < nv; ++v) {
        net.add_edge(2 * v, 2 * v + 1, 1);
        for (int p : g.preds(v)) net.add_edge(2 * p + 1, 2 * v, inf);
        if (g.preds(v).empty()) net.add_edge(s, 2 * v, inf);
    }
    for (int v : a) net.add_edge(2 * v + 1, t, inf);
    return net.max_flow(s, t);
}

std::int64_t count_L_ge(int n, int x) {
    if (x < 0 || 2 * x >= n) throw Error("count_L_ge requires 0 <= 2x < n");
    std::int64_t m = n - 2 * x;
    return (m - 1) * m * (m + 1) / 6;
}

std::int64_t count_L_ge_enumerated(const Cdag& g, int x) {
    std::int64_t count = 0;
    for (std::size_t id = 0; id < g.vertex_count(); ++id) {
        const auto& v = g.vertex(id);
        if (v.role != VertexRole::LVertex) continue;
        const int d = v.j - v.i;
        const int k = v.aux;
        if (k >= x && (d - 1 - k) >= x) ++count;
    }
    return count;
}

void export_cdag(const Cdag& g, std::ostream& out) {
    out << "# cdag n=" << g.n() << " vertices=" << g.vertex_count() << '\n';
    for (std::size_t id = 0; id < g.vertex_count(); ++id) {
        const auto& v = g.vertex(id);
        out << "# vertex " << id << ' ' << role_name(v.role) << " (" << v.i << ',' << v.j << ")\n";
    }
    for (std::size_t id = 0; id < g.vertex_count(); ++id)
        for (int p : g.preds(id)) out << p << ' ' << id << '\n';
}

}  // namespace dpio
