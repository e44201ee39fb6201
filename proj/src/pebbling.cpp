#include "dpio/pebbling.hpp"

#include <algorithm>
#include <unordered_set>

namespace dpio {

namespace {

struct StrategyWalker {
    const Cdag& g;
    std::vector<PebbleStep>* steps;  // null = peak only
    int live = 0;
    int peak = 0;

    void emit_compute(int v, int slide_from) {
        if (steps) steps->push_back({PebbleStepKind::Compute, v, slide_from});
        if (slide_from < 0) ++live;
        peak = std::max(peak, live);
    }
    void emit_discard(int v) {
        if (steps) steps->push_back({PebbleStepKind::Discard, v});
        --live;
    }

    // Leaves a single pebble on the root of (i,j).
    void walk(int i, int j) {
        if (i == j) {
            emit_compute(g.root_id(i, i), -1);
            return;
        }
        const int d = j - i;
        int acc = -1;  // chain vertex holding splits 0..k-1
        for (int k = 0; k < d; ++k) {
            auto [li, lj] = std::pair(i, i + k);
            auto [ri, rj] = std::pair(i + k + 1, j);
            bool left_larger = (lj - li) >= (rj - ri);
            int first_root, second_root;
            if (left_larger) {
                walk(li, lj);
                first_root = g.root_id(li, lj);
                walk(ri, rj);
                second_root = g.root_id(ri, rj);
            } else {
                walk(ri, rj);
                first_root = g.root_id(ri, rj);
                walk(li, lj);
                second_root = g.root_id(li, lj);
            }
            int leaf = g.leaf_ids(i, j)[k];
            emit_compute(leaf, first_root);
            emit_discard(second_root);
            if (k == 0) {
                acc = leaf;  // chain t_0 is the first leaf
            } else {
                // chain internal t_k has predecessors (t_{k-1}, l_k)
                int chain = find_chain_vertex(acc, leaf);
                emit_compute(chain, acc);
                emit_discard(leaf);
                acc = chain;
            }
        }
    }

    int find_chain_vertex(int acc, int leaf) const {
        // In the left-chain tree the combiner of (acc, leaf) is the unique
        // vertex with exactly these predecessors; chain vertices are laid
        // out right after the leaves, so scan the owner's tree range.
        int owner = g.vertex(leaf).owner;
        const auto& ov = g.vertex(owner);
        for (int id = leaf + 1; id <= owner; ++id) {
            const auto& v = g.vertex(id);
            if (v.i != ov.i || v.j != ov.j) continue;
            const auto& p = g.preds(id);
            if (p.size() == 2 && p[0] == acc && p[1] == leaf) return id;
        }
        throw Error("left-chain combiner not found");
    }
};

}  // namespace

int strategy_peak(int n) {
    if (n < 1) throw TooLarge("strategy peak needs n >= 1");
    std::vector<int> p(n + 1, 0);
    p[1] = 1;
    for (int s = 2; s <= n; ++s) {
        int best = 0;
        for (int k = 0; k <= s - 2; ++k) {
            int a = std::max(k + 1, s - 1 - k);
            int b = std::min(k + 1, s - 1 - k);
            int t = k == 0 ? std::max({p[a], 1 + p[b], 2}) : std::max({1 + p[a], 2 + p[b], 3});
            best = std::max(best, t);
        }
        p[s] = best;
    }
    return p[n];
}

PebbleSchedule pebble_strategy(int n) {
    if (n < 2 || n > 20) throw TooLarge("pebble strategy supports 2 <= n <= 20");
    PebbleSchedule out{build_cdag(n, TreeShape::LeftChain), {}, false, 0};
    if (n <= kMaxMaterializedPebbleN) {
        StrategyWalker w{out.cdag, &out.steps};
        w.walk(1, n);
        out.steps_materialized = true;
        out.peak = w.peak;
    } else {
        out.peak = strategy_peak(n);
    }
    return out;
}

int replay_peak(const Cdag& g, const std::vector<PebbleStep>& steps) {
    std::vector<char> pebbled(g.vertex_count(), 0);
    int live = 0, peak = 0;
    for (const auto& st : steps) {
        if (st.kind == PebbleStepKind::Compute) {
            for (int p : g.preds(st.vertex))
                if (!pebbled[p]) throw PreconditionViolation("compute with unpebbled predecessor");
            if (st.slide_from >= 0) {
                const auto& preds = g.preds(st.vertex);
                if (std::find(preds.begin(), preds.end(), st.slide_from) == preds.end())
                    throw PreconditionViolation("slide source is not a predecessor");
                if (!pebbled[st.slide_from]) throw PreconditionViolation("slide source not pebbled");
                pebbled[st.slide_from] = 0;
                --live;
            }
            if (pebbled[st.vertex]) throw PreconditionViolation("vertex already pebbled");
            pebbled[st.vertex] = 1;
            ++live;
            peak = std::max(peak, live);
        } else {
            if (!pebbled[st.vertex]) throw PreconditionViolation("discarding an unpebbled vertex");
            pebbled[st.vertex] = 0;
            --live;
        }
    }
    return peak;
}

int min_black_pebbles(const Cdag& g) {
    const int nv = static_cast<int>(g.vertex_count());
    if (nv > 64) throw TooLarge("exhaustive pebbling search capped at 64 vertices");
    const std::uint64_t target = std::uint64_t{1} << g.root_id(1, g.n());

    for (int budget = 1; budget <= nv; ++budget) {
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::uint64_t> frontier{0};
        seen.insert(0);
        seen.reserve(1 << 20);
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (std::uint64_t mask : frontier) {
                int count = __builtin_popcountll(mask);
                for (int v = 0; v < nv; ++v) {
                    std::uint64_t vbit = std::uint64_t{1} << v;
                    if (mask & vbit) {
                        std::uint64_t m2 = mask & ~vbit;  // discard
                        if (seen.insert(m2).second) next.push_back(m2);
                        continue;
                    }
                    bool ready = true;
                    for (int p : g.preds(v))
                        if (!(mask >> p & 1)) { ready = false; break; }
                    if (!ready) continue;
                    if (vbit == target) return budget;  // reaching the goal ends the game
                    if (count < budget) {
                        std::uint64_t m2 = mask | vbit;  // place
                        if (seen.insert(m2).second) next.push_back(m2);
                    }
                    for (int p : g.preds(v)) {
                        std::uint64_t m2 = (mask & ~(std::uint64_t{1} << p)) | vbit;  // slide
                        if (seen.insert(m2).second) next.push_back(m2);
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    throw Error("pebbling search failed to reach the root");
}

}  // namespace dpio
