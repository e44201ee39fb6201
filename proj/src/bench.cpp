#include "dpio/bench.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpio/closure.hpp"
#include "dpio/schedule.hpp"
#include "dpio/valiant.hpp"

namespace dpio {

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::Mcm: return "mcm";
        case Problem::Opt: return "opt";
        case Problem::Bst: return "bst";
    }
    return "?";
}

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::Naive: return "naive";
        case Algo::Valiant: return "valiant";
        case Algo::LargeMem: return "largemem";
    }
    return "?";
}

std::optional<Problem> parse_problem(const std::string& s) {
    if (s == "mcm") return Problem::Mcm;
    if (s == "opt") return Problem::Opt;
    if (s == "bst") return Problem::Bst;
    return std::nullopt;
}

std::optional<Algo> parse_algo(const std::string& s) {
    if (s == "naive") return Algo::Naive;
    if (s == "valiant") return Algo::Valiant;
    if (s == "largemem") return Algo::LargeMem;
    return std::nullopt;
}

std::optional<Layout> parse_layout(const std::string& s) {
    if (s == "rowmajor") return Layout::RowMajor;
    if (s == "morton") return Layout::Morton;
    return std::nullopt;
}

McmKernel random_mcm(int n, std::uint64_t seed) {
    Rng rng(seed * 0x51ed270b + 11 + n);
    std::vector<std::uint64_t> dims;
    for (int i = 0; i <= n; ++i) dims.push_back(static_cast<std::uint64_t>(rng.range(2, 64)));
    return McmKernel(std::move(dims));
}

OptKernel random_opt(int n, std::uint64_t seed) {
    Rng rng(seed * 0x51ed270b + 22 + n);
    // Convex position: sorted angles on a circle of radius 1000.
    std::vector<double> angles;
    for (int i = 0; i <= n; ++i)
        angles.push_back(2.0 * 3.14159265358979323846 * (i + 0.8 * rng.real01()) / (n + 1));
    std::sort(angles.begin(), angles.end());
    std::vector<double> xs, ys;
    for (double a : angles) {
        xs.push_back(1000.0 * std::cos(a));
        ys.push_back(1000.0 * std::sin(a));
    }
    return OptKernel::from_coords(std::move(xs), std::move(ys));
}

BstKernel random_bst(int n, std::uint64_t seed) {
    Rng rng(seed * 0x51ed270b + 33 + n);
    std::vector<double> p(n - 1 >= 0 ? n - 1 : 0), q(n);
    double total = 0;
    for (auto& v : p) { v = 0.05 + rng.real01(); total += v; }
    for (auto& v : q) { v = 0.05 + rng.real01(); total += v; }
    for (auto& v : p) v /= total;
    double qsum = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) { q[i] /= total; qsum += q[i]; }
    double psum = 0;
    for (double v : p) psum += v;
    q.back() = 1.0 - psum - qsum;  // absorb rounding so the sum is exactly 1
    return BstKernel(std::move(p), std::move(q));
}

Grammar random_grammar(const GrammarParams& params, std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b9 + 44);
    const int nv = std::max(1, params.variables);
    std::vector<std::string> names;
    for (int v = 0; v < nv; ++v) names.push_back("V" + std::to_string(v));

    std::vector<BinaryRule> binary;
    std::vector<std::pair<int, int>> rhs_pool;
    for (int r = 0; r < params.binary_rules; ++r) {
        int lhs = static_cast<int>(rng.range(0, nv - 1));
        std::pair<int, int> rhs;
        if (!rhs_pool.empty() && rng.real01() < params.duplicate_rhs_rate)
            rhs = rhs_pool[static_cast<std::size_t>(rng.range(0, static_cast<int>(rhs_pool.size()) - 1))];
        else
            rhs = {static_cast<int>(rng.range(0, nv - 1)), static_cast<int>(rng.range(0, nv - 1))};
        rhs_pool.push_back(rhs);
        binary.push_back({lhs, rhs.first, rhs.second});
    }

    std::vector<TerminalRule> terminal;
    for (int v = 0; v < nv; ++v)  // every variable can derive some character
        terminal.push_back({v, static_cast<char32_t>(U'a' + rng.range(0, params.alphabet - 1))});
    for (int r = nv; r < params.terminal_rules; ++r)
        terminal.push_back({static_cast<int>(rng.range(0, nv - 1)),
                            static_cast<char32_t>(U'a' + rng.range(0, params.alphabet - 1))});

    return Grammar(std::move(names), std::move(binary), std::move(terminal), 0, false);
}

std::string random_string(const Grammar& g, int n, std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b9 + 55 + n);
    std::vector<char32_t> alphabet;
    for (const auto& r : g.terminal_rules())
        if (std::find(alphabet.begin(), alphabet.end(), r.terminal) == alphabet.end())
            alphabet.push_back(r.terminal);
    if (alphabet.empty()) alphabet.push_back(U'a');
    std::string out;
    for (int i = 0; i < n; ++i)
        out += utf8_encode(alphabet[static_cast<std::size_t>(rng.range(0, static_cast<int>(alphabet.size()) - 1))]);
    return out;
}

namespace {

bool expand(const Grammar& g, int var, int len, Rng& rng, int depth, std::string& out) {
    if (depth > 64) return false;
    if (len == 1) {
        std::vector<char32_t> opts;
        for (const auto& r : g.terminal_rules())
            if (r.lhs == var) opts.push_back(r.terminal);
        if (opts.empty()) return false;
        out += utf8_encode(opts[static_cast<std::size_t>(rng.range(0, static_cast<int>(opts.size()) - 1))]);
        return true;
    }
    std::vector<const BinaryRule*> rules;
    for (const auto& r : g.binary_rules())
        if (r.lhs == var) rules.push_back(&r);
    if (rules.empty()) return false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const auto* r = rules[static_cast<std::size_t>(rng.range(0, static_cast<int>(rules.size()) - 1))];
        int split = static_cast<int>(rng.range(1, len - 1));
        std::string saved = out;
        if (expand(g, r->rhs_first, split, rng, depth + 1, out) &&
            expand(g, r->rhs_second, len - split, rng, depth + 1, out))
            return true;
        out = saved;
    }
    return false;
}

}  // namespace

std::optional<std::string> random_derivation(const Grammar& g, int len, Rng& rng) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::string out;
        if (expand(g, g.start(), len, rng, 0, out)) return out;
    }
    return std::nullopt;
}

namespace {

template <class K>
BenchRow run_kernel_point(const K& kernel, const BenchPoint& p) {
    CacheModel cache(p.cache_m, p.cache_b);
    Tracer tracer(&cache);
    switch (p.algo) {
        case Algo::Naive: naive_closure(kernel, p.layout, tracer); break;
        case Algo::Valiant: valiant_closure(kernel, p.layout, tracer); break;
        case Algo::LargeMem: large_memory_schedule(kernel, tracer); break;
    }
    const int dim = next_pow2(static_cast<int>(kernel.input_count()) + 1);
    BenchRow row{p, dim, cache.stats(), 0, 0};
    row.bound_nr = lower_bound_nr(dim, static_cast<double>(p.cache_m), static_cast<double>(p.cache_b));
    row.bound_rc = lower_bound_rc(dim, static_cast<double>(p.cache_m), static_cast<double>(p.cache_b));
    return row;
}

}  // namespace

BenchRow run_bench_point(const BenchPoint& p, std::uint64_t seed) {
    switch (p.problem) {
        case Problem::Mcm: return run_kernel_point(random_mcm(p.n, seed), p);
        case Problem::Opt: return run_kernel_point(random_opt(p.n, seed), p);
        case Problem::Bst: return run_kernel_point(random_bst(p.n, seed), p);
    }
    throw Error("unreachable");
}

std::vector<BenchRow> run_bench_grid(Problem problem, const std::vector<int>& sizes,
                                     const std::vector<std::uint64_t>& ms,
                                     const std::vector<std::uint64_t>& bs,
                                     const std::vector<Algo>& algos,
                                     const std::vector<Layout>& layouts, std::uint64_t seed) {
    for (auto m : ms)
        for (auto b : bs)
            if (m < b * b)
                throw BadGeometry("benchmark configurations must be tall: M >= B^2");
    std::vector<BenchRow> rows;
    for (Algo algo : algos)
        for (Layout layout : layouts)
            for (int n : sizes)
                for (auto m : ms)
                    for (auto b : bs)
                        rows.push_back(run_bench_point({problem, algo, layout, n, m, b}, seed));
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "problem,algo,layout,n,M,B,accesses,misses,io,bound_nr,bound_rc\n";
    char buf[64];
    for (const auto& r : rows) {
        out << problem_name(r.point.problem) << ',' << algo_name(r.point.algo) << ','
            << layout_name(r.point.layout) << ',' << r.point.n << ',' << r.point.cache_m << ','
            << r.point.cache_b << ',' << r.stats.accesses << ',' << r.stats.misses << ','
            << r.stats.io() << ',';
        std::snprintf(buf, sizeof buf, "%.10g,%.10g", r.bound_nr, r.bound_rc);
        out << buf << '\n';
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> f;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 11) throw SyntaxError("csv row needs 11 fields");
        CsvRow r;
        r.problem = f[0];
        r.algo = f[1];
        r.layout = f[2];
        r.n = std::stoull(f[3]);
        r.cache_m = std::stoull(f[4]);
        r.cache_b = std::stoull(f[5]);
        r.accesses = std::stoull(f[6]);
        r.misses = std::stoull(f[7]);
        r.io = std::stoull(f[8]);
        r.bound_nr = std::stod(f[9]);
        r.bound_rc = std::stod(f[10]);
        rows.push_back(r);
    }
    return rows;
}

FitResult fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw InsufficientData("power-law fit needs at least 3 points");
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) throw InsufficientData("power-law fit needs 2 distinct x values");

    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = std::log(xs[static_cast<std::size_t>(i)]);
        a(i, 1) = 1.0;
        b(i) = std::log(ys[static_cast<std::size_t>(i)]);
    }
    Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
    Eigen::VectorXd resid = a * coef - b;
    return {coef(0), std::exp(coef(1)), resid.cwiseAbs().maxCoeff()};
}

}  // namespace dpio
