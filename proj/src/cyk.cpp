#include "dpio/cyk.hpp"

#include "dpio/util.hpp"

namespace dpio {

std::vector<BitCell> encode_terminals(const Grammar& g, const std::vector<char32_t>& w) {
    std::vector<BitCell> cells(w.size(), BitCell(g.plane_count()));
    for (std::size_t i = 0; i < w.size(); ++i)
        for (const auto& r : g.terminal_rules())
            if (r.terminal == w[i]) cells[i].set(r.lhs);
    return cells;
}

CykTable::CykTable(int n, int planes, Addr base)
    : n_(n), planes_(planes), cell_words_((planes + 63) / 64), base_(base),
      words_(static_cast<std::size_t>(n) * n * cell_words_, 0) {}

std::size_t CykTable::word_index(int i, int j, int v) const {
    return (static_cast<std::size_t>(i - 1) * n_ + (j - 1)) * cell_words_ + (v >> 6);
}

bool CykTable::get_bit(int i, int j, int v, Tracer& t) const {
    std::size_t w = word_index(i, j, v);
    t.read(base_ + w);
    return (words_[w] >> (v & 63)) & 1;
}

void CykTable::set_bit(int i, int j, int v, Tracer& t) {
    std::size_t w = word_index(i, j, v);
    t.write(base_ + w);
    words_[w] |= std::uint64_t{1} << (v & 63);
}

BitCell CykTable::variable_set(const Grammar& g, int i, int j) const {
    BitCell out(g.plane_count());
    for (int v = 0; v < g.variable_count(); ++v)
        if ((words_[word_index(i, j, v)] >> (v & 63)) & 1) out.set(v);
    return out;
}

NaiveCykResult naive_cyk(const Grammar& g, const std::vector<char32_t>& w, Tracer t) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return {g.start_epsilon(), 0, CykTable(0, g.plane_count(), 0)};

    AddressSpace space;
    Addr term_base = space.alloc(2 * g.terminal_rules().size());
    Addr rule_base = space.alloc(3 * g.binary_rules().size());
    Addr input_base = space.alloc(w.size());
    CykTable table(n, g.plane_count(), space.alloc(0));
    space.alloc(table.words());

    for (int i = 1; i <= n; ++i) {
        t.read(input_base + (i - 1));
        for (std::size_t r = 0; r < g.terminal_rules().size(); ++r) {
            t.read(term_base + 2 * r, 2);
            if (g.terminal_rules()[r].terminal == w[i - 1])
                table.set_bit(i, i, g.terminal_rules()[r].lhs, t);
        }
    }

    for (int len = 2; len <= n; ++len) {
        for (int i = 1; i <= n - len + 1; ++i) {
            const int j = i + len - 1;
            for (int k = i; k <= j - 1; ++k) {
                for (std::size_t r = 0; r < g.binary_rules().size(); ++r) {
                    const auto& rule = g.binary_rules()[r];
                    t.read(rule_base + 3 * r, 3);
                    if (table.get_bit(i, k, rule.rhs_first, t) &&
                        table.get_bit(k + 1, j, rule.rhs_second, t))
                        table.set_bit(i, j, rule.lhs, t);
                }
            }
        }
    }

    bool accept = table.get_bit(1, n, g.start(), t);
    return {accept, n, std::move(table)};
}

NaiveCykResult naive_cyk(const Grammar& g, const std::string& utf8, Tracer t) {
    return naive_cyk(g, utf8_decode(utf8), t);
}

CykPlaneMatrix::CykPlaneMatrix(int dim, int planes, Layout layout, Addr base)
    : dim_(dim), planes_(planes), layout_(layout), base_(base),
      plane_words_((static_cast<std::uint64_t>(dim) * dim + 63) / 64),
      bits_(static_cast<std::size_t>(planes) * plane_words_, 0) {
    if (dim < 2 || !is_pow2(static_cast<std::uint64_t>(dim)))
        throw BadGeometry("plane matrix dim must be a power of two >= 2");
}

std::uint64_t CykPlaneMatrix::bit_index(int i, int j) const {
    if (i < 1 || j < 1 || i > dim_ || j > dim_) throw OutOfBounds("plane matrix cell out of bounds");
    return linear_index(layout_, dim_, i, j);
}

Addr CykPlaneMatrix::address_of(int plane, int i, int j) const {
    return base_ + static_cast<std::uint64_t>(plane) * plane_words_ + (bit_index(i, j) >> 6);
}

bool CykPlaneMatrix::get_bit(int plane, int i, int j, Tracer& t) const {
    std::uint64_t bi = bit_index(i, j);
    std::uint64_t w = static_cast<std::uint64_t>(plane) * plane_words_ + (bi >> 6);
    t.read(base_ + w);
    return (bits_[w] >> (bi & 63)) & 1;
}

void CykPlaneMatrix::set_bit(int plane, int i, int j, Tracer& t) {
    std::uint64_t bi = bit_index(i, j);
    std::uint64_t w = static_cast<std::uint64_t>(plane) * plane_words_ + (bi >> 6);
    t.write(base_ + w);
    bits_[w] |= std::uint64_t{1} << (bi & 63);
}

bool CykPlaneMatrix::peek_bit(int plane, int i, int j) const {
    std::uint64_t bi = bit_index(i, j);
    return (bits_[static_cast<std::uint64_t>(plane) * plane_words_ + (bi >> 6)] >> (bi & 63)) & 1;
}

void CykPlaneMatrix::poke_bit(int plane, int i, int j) {
    std::uint64_t bi = bit_index(i, j);
    bits_[static_cast<std::uint64_t>(plane) * plane_words_ + (bi >> 6)] |= std::uint64_t{1} << (bi & 63);
}

BitCell CykPlaneMatrix::variable_set(const Grammar& g, int i, int j) const {
    BitCell out(g.plane_count());
    for (int v = 0; v < g.variable_count(); ++v)
        if (peek_bit(v, i, j)) out.set(v);
    return out;
}

namespace {

void bmma_rec(CykPlaneMatrix& m, int pa, int pb, int pc, int ar, int ac, int br, int bc, int cr,
              int cc, int d, Tracer& t, StateMap* states) {
    if (d == 1) {
        bool lhs = m.get_bit(pb, br + 1, bc + 1, t);
        bool rhs = m.get_bit(pc, cr + 1, cc + 1, t);
        if (lhs && rhs) {
            if (states) states->mark_partial(ar + 1, ac + 1);
            m.set_bit(pa, ar + 1, ac + 1, t);
        }
        return;
    }
    const int h = d / 2;
    for (const auto& s : detail::kMmaOrder) {
        const int i = (s.ar - 1) * h, j = (s.ac - 1) * h, k = (s.k - 1) * h;
        bmma_rec(m, pa, pb, pc, ar + i, ac + j, br + i, bc + k, cr + k, cc + j, h, t, states);
    }
}

}  // namespace

void boolean_mma(const PlaneView& a, const PlaneView& b, const PlaneView& c, Tracer& t,
                 StateMap* states) {
    if (a.m != b.m || a.m != c.m) throw DimMismatch("boolean mma views must share a matrix");
    if (a.dim != b.dim || a.dim != c.dim || !is_pow2(static_cast<std::uint64_t>(a.dim)))
        throw DimMismatch("boolean mma operands must be equal power-of-two dims");
    bmma_rec(*a.m, a.plane, b.plane, c.plane, a.row0, a.col0, b.row0, b.col0, c.row0, c.col0, a.dim,
             t, states);
}

GroupTableAddrs layout_group_table(const Grammar& g, AddressSpace& space) {
    GroupTableAddrs out;
    std::uint64_t words = 0;
    for (const auto& grp : g.groups()) {
        out.record_offset.push_back(words);
        words += 3 + grp.lhs.size();
    }
    out.base = space.alloc(words);
    return out;
}

namespace {

void cyk_star_rec(CykPlaneMatrix& x, const Grammar& g, const GroupTableAddrs& gt, int a, int b,
                  int h, Tracer& t, StateMap* states) {
    if (h == 1) {
        // Root of subproblem (a+1, b) is complete: fold each placeholder
        // plane into the variable planes of its group's left-hand sides.
        // Terminal-rule bits already present must survive, hence OR.
        if (states) {
            if (states->closed(a + 1, b + 1)) return;  // superdiagonal input cell
            states->mark_closed(a + 1, b + 1);
        }
        for (std::size_t gi = 0; gi < g.groups().size(); ++gi) {
            const auto& grp = g.groups()[gi];
            t.read(gt.base + gt.record_offset[gi]);                       // placeholder id
            t.read(gt.base + gt.record_offset[gi] + 3, grp.lhs.size());   // lhs list
            if (x.get_bit(grp.placeholder, a + 1, b + 1, t))
                for (int lhs : grp.lhs) x.set_bit(lhs, a + 1, b + 1, t);
        }
        return;
    }
    const int q = h / 2;
    auto group_mma = [&](int tr, int tc, int br_, int bc_, int cr, int cc) {
        for (std::size_t gi = 0; gi < g.groups().size(); ++gi) {
            const auto& grp = g.groups()[gi];
            t.read(gt.base + gt.record_offset[gi], 3);  // placeholder, rhs pair
            boolean_mma({&x, grp.placeholder, tr, tc, q}, {&x, grp.rhs_first, br_, bc_, q},
                        {&x, grp.rhs_second, cr, cc, q}, t, states);
        }
    };
    cyk_star_rec(x, g, gt, a + q, b, q, t, states);
    group_mma(a, b, a, a + q, a + q, b);
    cyk_star_rec(x, g, gt, a, b, q, t, states);
    group_mma(a + q, b + q, a + q, b, b, b + q);
    cyk_star_rec(x, g, gt, a + q, b + q, q, t, states);
    group_mma(a, b + q, a, a + q, a + q, b + q);
    group_mma(a, b + q, a, b, b, b + q);
    cyk_star_rec(x, g, gt, a, b + q, q, t, states);
}

void cyk_closure_rec(CykPlaneMatrix& x, const Grammar& g, const GroupTableAddrs& gt, int off, int d,
                     Tracer& t, StateMap* states) {
    if (d == 2) return;
    cyk_closure_rec(x, g, gt, off, d / 2, t, states);
    cyk_closure_rec(x, g, gt, off + d / 2, d / 2, t, states);
    if (states) {
        detail::require_closed_block(*states, off, d / 2);
        detail::require_closed_block(*states, off + d / 2, d / 2);
    }
    cyk_star_rec(x, g, gt, off, off + d / 2, d / 2, t, states);
}

}  // namespace

void cyk_star(CykPlaneMatrix& x, const Grammar& g, const GroupTableAddrs& groups, int row0, int dim,
              Tracer& t, StateMap* states) {
    if (dim < 2 || !is_pow2(static_cast<std::uint64_t>(dim)))
        throw DimMismatch("star needs a power-of-two dim >= 2");
    if (states && dim > 2) {
        detail::require_closed_block(*states, row0, dim / 2);
        detail::require_closed_block(*states, row0 + dim / 2, dim / 2);
    }
    cyk_star_rec(x, g, groups, row0, row0 + dim / 2, dim / 2, t, states);
}

CykClosureResult cyk_closure(const Grammar& g, const std::vector<char32_t>& w, Layout layout,
                             Tracer t) {
    const int n = static_cast<int>(w.size());
    if (n < 1) throw EmptyInstance("closure path needs a non-empty string");
    const int dim = next_pow2(n + 1);

    AddressSpace space;
    Addr term_base = space.alloc(2 * g.terminal_rules().size());
    GroupTableAddrs gt = layout_group_table(g, space);
    Addr input_base = space.alloc(w.size());
    CykPlaneMatrix x(dim, g.plane_count(), layout, space.alloc(0));
    space.alloc(x.words());

    for (int i = 1; i <= n; ++i) {
        t.read(input_base + (i - 1));
        for (std::size_t r = 0; r < g.terminal_rules().size(); ++r) {
            t.read(term_base + 2 * r, 2);
            if (g.terminal_rules()[r].terminal == w[i - 1])
                x.set_bit(g.terminal_rules()[r].lhs, i, i + 1, t);
        }
    }

    StateMap states(dim);
    for (int i = 1; i < dim; ++i) states.mark_closed(i, i + 1);
    cyk_closure_rec(x, g, gt, 0, dim, t, &states);

    bool accept = x.get_bit(g.start(), 1, n + 1, t);
    return {accept, n, std::move(x)};
}

CykClosureResult cyk_closure(const Grammar& g, const std::string& utf8, Layout layout, Tracer t) {
    return cyk_closure(g, utf8_decode(utf8), layout, t);
}

}  // namespace dpio
