// Command-line driver: solve DP instances under a simulated cache, parse
// strings with CYK, sweep benchmark grids to CSV, fit scaling laws, and run
// the structural graph checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "dpio/bench.hpp"
#include "dpio/bounds.hpp"
#include "dpio/cdag.hpp"
#include "dpio/closure.hpp"
#include "dpio/cyk.hpp"
#include "dpio/pebbling.hpp"
#include "dpio/schedule.hpp"
#include "dpio/valiant.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct CliInput : dpio::Error {
    using Error::Error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

// Instance argument: a path when a readable file of that name exists,
// otherwise inline instance text.
std::string instance_text(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

struct SolveOptions {
    std::string problem;
    std::string algo = "naive";
    std::string layout = "rowmajor";
    std::uint64_t cache_m = 4096;
    std::uint64_t cache_b = 8;
    std::string instance;
    std::string trace_dump;
};

template <class K>
int solve_with(const K& kernel, const SolveOptions& o, dpio::Layout layout, dpio::Algo algo) {
    dpio::CacheModel cache(o.cache_m, o.cache_b);
    std::ofstream dump;
    if (!o.trace_dump.empty()) {
        dump.open(o.trace_dump);
        if (!dump) throw CliInput("cannot open trace dump " + o.trace_dump);
    }
    dpio::Tracer tracer(&cache, o.trace_dump.empty() ? nullptr : &dump);

    typename K::Cell solution;
    switch (algo) {
        case dpio::Algo::Naive: solution = dpio::naive_closure(kernel, layout, tracer).solution; break;
        case dpio::Algo::Valiant: solution = dpio::valiant_closure(kernel, layout, tracer).solution; break;
        case dpio::Algo::LargeMem: solution = dpio::large_memory_schedule(kernel, tracer).solution; break;
    }

    const int dim = dpio::next_pow2(static_cast<int>(kernel.input_count()) + 1);
    const auto& s = cache.stats();
    std::cout << "problem: " << o.problem << "\nalgo: " << dpio::algo_name(algo)
              << "\nlayout: " << dpio::layout_name(layout) << "\nn: " << kernel.input_count()
              << "\npadded_dim: " << dim << "\nM: " << o.cache_m << "\nB: " << o.cache_b << '\n';
    std::cout << "cost: " << solution.cost << '\n';
    std::cout << "accesses: " << s.accesses << "\nhits: " << s.hits << "\nmisses: " << s.misses
              << "\ndirty_evictions: " << s.evicted_dirty_writes << "\nio: " << s.io() << '\n';
    std::cout << "bound_nr: " << dpio::lower_bound_nr(dim, o.cache_m, o.cache_b)
              << "\nbound_rc: " << dpio::lower_bound_rc(dim, o.cache_m, o.cache_b) << '\n';
    return kExitOk;
}

int cmd_solve(const SolveOptions& o) {
    auto problem = dpio::parse_problem(o.problem);
    auto algo = dpio::parse_algo(o.algo);
    auto layout = dpio::parse_layout(o.layout);
    if (!problem || !algo || !layout) throw dpio::BadGeometry("unknown problem/algo/layout");

    std::string text = instance_text(o.instance);
    if (*problem == dpio::Problem::Mcm) {
        auto nums = parse_numbers(text);
        if (nums.size() < 2) throw CliInput("matrix chain instance needs at least two dimensions");
        std::vector<std::uint64_t> dims(nums.begin(), nums.end());
        return solve_with(dpio::McmKernel(std::move(dims)), o, *layout, *algo);
    }
    if (*problem == dpio::Problem::Opt) {
        auto nums = parse_numbers(text);
        if (nums.size() < 4 || nums.size() % 2 != 0) throw CliInput("polygon instance needs x y pairs");
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < nums.size(); i += 2) {
            xs.push_back(nums[i]);
            ys.push_back(nums[i + 1]);
        }
        return solve_with(dpio::OptKernel::from_coords(std::move(xs), std::move(ys)), o, *layout, *algo);
    }
    std::istringstream lines(text);
    std::string pline, qline;
    std::getline(lines, pline);
    std::getline(lines, qline);
    return solve_with(dpio::BstKernel(parse_numbers(pline), parse_numbers(qline)), o, *layout, *algo);
}

struct ParseOptions {
    std::string grammar;
    std::string input;
    std::string algo = "oblivious";
    std::string layout = "rowmajor";
    std::uint64_t cache_m = 4096;
    std::uint64_t cache_b = 8;
};

int cmd_parse(const ParseOptions& o) {
    auto g = dpio::parse_grammar(slurp(o.grammar));
    std::string text = o.input;
    {
        std::ifstream in(o.input);
        if (!o.input.empty() && in) std::getline(in, text);
    }
    auto w = dpio::utf8_decode(text);
    auto layout = dpio::parse_layout(o.layout);
    if (!layout) throw dpio::BadGeometry("unknown layout");
    if (o.algo != "naive" && o.algo != "oblivious") throw dpio::BadGeometry("unknown parse algo");

    dpio::CacheModel cache(o.cache_m, o.cache_b);
    dpio::Tracer tracer(&cache);
    bool accept;
    if (w.empty())
        accept = g.start_epsilon();
    else if (o.algo == "naive")
        accept = dpio::naive_cyk(g, w, tracer).accept;
    else
        accept = dpio::cyk_closure(g, w, *layout, tracer).accept;

    const auto& s = cache.stats();
    std::cout << (accept ? "ACCEPT" : "REJECT") << '\n';
    std::cout << "n: " << w.size() << "\nvariables: " << g.variable_count()
              << "\ngamma: " << g.gamma() << "\nalgo: " << o.algo << "\nM: " << o.cache_m
              << "\nB: " << o.cache_b << '\n';
    std::cout << "accesses: " << s.accesses << "\nmisses: " << s.misses << "\nio: " << s.io() << '\n';
    std::cout << "cyk_bound: "
              << dpio::cyk_lower_bound(dpio::next_pow2(static_cast<int>(w.size()) + 1), o.cache_m,
                                       o.cache_b, g.gamma())
              << '\n';
    return kExitOk;
}

struct BenchOptions {
    std::string problem = "mcm";
    std::string sizes = "64,128";
    std::string cache_m = "4096";
    std::string cache_b = "8";
    std::string algos = "naive,valiant";
    std::string layouts = "rowmajor";
    std::uint64_t seed = 1;
    std::string csv;
};

int cmd_bench(const BenchOptions& o) {
    auto problem = dpio::parse_problem(o.problem);
    if (!problem) throw dpio::BadGeometry("unknown problem");
    std::vector<int> sizes;
    for (const auto& s : split_list(o.sizes)) sizes.push_back(std::stoi(s));
    std::vector<std::uint64_t> ms, bs;
    for (const auto& s : split_list(o.cache_m)) ms.push_back(std::stoull(s));
    for (const auto& s : split_list(o.cache_b)) bs.push_back(std::stoull(s));
    std::vector<dpio::Algo> algos;
    for (const auto& s : split_list(o.algos)) {
        auto a = dpio::parse_algo(s);
        if (!a) throw dpio::BadGeometry("unknown algo " + s);
        algos.push_back(*a);
    }
    std::vector<dpio::Layout> layouts;
    for (const auto& s : split_list(o.layouts)) {
        auto l = dpio::parse_layout(s);
        if (!l) throw dpio::BadGeometry("unknown layout " + s);
        layouts.push_back(*l);
    }
    auto rows = dpio::run_bench_grid(*problem, sizes, ms, bs, algos, layouts, o.seed);
    if (o.csv.empty()) {
        dpio::write_csv(std::cout, rows);
    } else {
        std::ofstream out(o.csv);
        if (!out) throw CliInput("cannot open " + o.csv);
        dpio::write_csv(out, rows);
    }
    return kExitOk;
}

struct CdagOptions {
    int n = 8;
    std::string check = "counts";
    std::string shape = "balanced";
    std::uint64_t seed = 1;
    std::string export_path;
};

// Structural checks; each prints one PASS/FAIL line with the counts or the
// first counterexample.
int cmd_cdag(const CdagOptions& o) {
    using namespace dpio;
    TreeShape shape = o.shape == "leftchain" ? TreeShape::LeftChain : TreeShape::Balanced;
    bool pass = true;

    if (o.check == "counts") {
        auto g = build_cdag(o.n, shape);
        std::size_t r = g.r_vertex_count();
        std::size_t l = g.count_role(VertexRole::LVertex);
        std::size_t want_r = static_cast<std::size_t>(o.n) * (o.n + 1) / 2;
        std::size_t want_l = (static_cast<std::size_t>(o.n) * o.n * o.n - o.n) / 6;
        pass = r == want_r && l == want_l;
        std::cout << "R=" << r << " L=" << l << (pass ? " PASS" : " FAIL") << '\n';
    } else if (o.check == "wcover") {
        auto g = build_cdag(o.n, shape);
        auto cover = w_cover(g);
        for (int i = 1; i <= o.n - 1 && pass; ++i)
            pass = cover.sets[i - 1].size() == static_cast<std::size_t>(o.n);
        // every leaf's two R-predecessors share exactly one cover set
        for (std::size_t id = 0; id < g.vertex_count() && pass; ++id) {
            const auto& v = g.vertex(id);
            if (v.role != VertexRole::LVertex) continue;
            int hits = 0;
            for (int i = 1; i <= o.n - 1; ++i) {
                const auto& preds = g.preds(static_cast<int>(id));
                const auto& a = g.vertex(preds[0]);
                const auto& b = g.vertex(preds[1]);
                if (a.j == i && b.i == i + 1) ++hits;
            }
            pass = hits == 1;
        }
        std::cout << "wcover sets=" << o.n - 1 << (pass ? " PASS" : " FAIL") << '\n';
    } else if (o.check == "lemma1") {
        auto g = build_cdag(o.n, shape);
        auto cover = w_cover(g);
        Rng rng(o.seed);
        std::size_t samples = 0;
        for (int i = 1; i <= o.n - 1 && pass; ++i) {
            for (int trial = 0; trial < 1000 && pass; ++trial, ++samples) {
                std::vector<int> x;
                for (int id : cover.sets[i - 1])
                    if (rng.real01() < 0.5) x.push_back(id);
                auto rep = interacting_pairs(g, i, x);
                pass = rep.pair_count <= x.size() * x.size() / 4.0 &&
                       rep.pair_count <= static_cast<std::size_t>(i) * (o.n - i);
            }
        }
        std::cout << "lemma1 samples=" << samples << (pass ? " PASS" : " FAIL") << '\n';
    } else if (o.check == "lemma4") {
        GrammarParams params;
        params.variables = 5;
        params.binary_rules = 8;
        params.duplicate_rhs_rate = 0.0;
        auto g = random_grammar(params, o.seed);
        auto cdag = build_cyk_cdag(std::min(o.n, 8), g);
        auto cover = w_cover(cdag);
        Rng rng(o.seed + 1);
        std::size_t samples = 0;
        for (int i = 1; i <= cdag.n() - 1 && pass; ++i) {
            for (int trial = 0; trial < 200 && pass; ++trial, ++samples) {
                std::vector<int> x;
                for (int id : cover.sets[i - 1])
                    if (rng.real01() < 0.5) x.push_back(id);
                auto rep = interacting_pairs(cdag, i, x);
                pass = rep.pair_count <= x.size() * x.size() / 4.0;
                // distinct pairs -> distinct leaves in distinct grammar roots
                std::set<int> leaves, owners;
                for (auto& pr : rep.pairs) {
                    leaves.insert(pr[2]);
                    owners.insert(cdag.vertex(pr[2]).owner);
                }
                pass = pass && leaves.size() == rep.pair_count && owners.size() == rep.pair_count;
            }
        }
        std::cout << "lemma4 samples=" << samples << (pass ? " PASS" : " FAIL") << '\n';
    } else if (o.check == "dominator") {
        auto g = build_cdag(std::min(o.n, 8), shape);
        Rng rng(o.seed);
        int trials = 200;
        for (int trial = 0; trial < trials && pass; ++trial) {
            std::vector<int> a;
            int min_span = g.n();
            for (int i = 1; i <= g.n(); ++i)
                for (int j = i; j <= g.n(); ++j)
                    if (rng.real01() < 0.2) {
                        a.push_back(g.root_id(i, j));
                        min_span = std::min(min_span, j - i);
                    }
            if (a.empty()) continue;
            int cut = min_dominator(g, a);
            int bound = std::min(static_cast<int>(a.size()), min_span);
            pass = cut >= bound;
        }
        std::cout << "dominator trials=" << trials << (pass ? " PASS" : " FAIL") << '\n';
    } else if (o.check == "pebble") {
        if (o.n > 20) throw TooLarge("pebble check supports n <= 20");
        auto sched = pebble_strategy(o.n);
        int peak = sched.peak;
        pass = peak == o.n && strategy_peak(o.n) == peak;
        if (sched.steps_materialized)
            pass = pass && replay_peak(sched.cdag, sched.steps) == peak;
        std::string min_str = "-";
        if (o.n <= 5) {
            int m = min_black_pebbles(build_cdag(o.n, shape));
            min_str = std::to_string(m);
            pass = pass && m == o.n;
        }
        std::cout << "min=" << min_str << " strategy_peak=" << peak << (pass ? " PASS" : " FAIL")
                  << '\n';
    } else {
        throw BadGeometry("unknown check " + o.check);
    }

    if (!o.export_path.empty()) {
        std::ofstream out(o.export_path);
        if (!out) throw CliInput("cannot open " + o.export_path);
        export_cdag(build_cdag(o.n, shape), out);
    }
    return pass ? kExitOk : 1;
}

struct FitOptions {
    std::string csv;
    std::string x = "n";
    std::string filter;
    double expect = 0;
    bool has_expect = false;
};

int cmd_fit(const FitOptions& o) {
    std::ifstream in(o.csv);
    if (!in) throw CliInput("cannot open " + o.csv);
    auto rows = dpio::read_csv(in);
    std::vector<std::pair<std::string, std::string>> filters;
    for (const auto& f : split_list(o.filter)) {
        auto eq = f.find('=');
        if (eq == std::string::npos) throw CliInput("filter must be key=value");
        filters.emplace_back(f.substr(0, eq), f.substr(eq + 1));
    }
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        bool keep = true;
        for (const auto& [k, v] : filters) {
            std::string field = k == "problem" ? r.problem
                              : k == "algo" ? r.algo
                              : k == "layout" ? r.layout
                              : k == "n" ? std::to_string(r.n)
                              : k == "M" ? std::to_string(r.cache_m)
                              : k == "B" ? std::to_string(r.cache_b)
                                         : throw CliInput("unknown filter key " + k);
            if (field != v) { keep = false; break; }
        }
        if (!keep) continue;
        xs.push_back(o.x == "n" ? static_cast<double>(r.n)
                   : o.x == "M" ? static_cast<double>(r.cache_m)
                                : static_cast<double>(r.cache_b));
        ys.push_back(static_cast<double>(r.misses));
    }
    auto fit = dpio::fit_scaling(xs, ys);
    std::cout << "points: " << xs.size() << "\nexponent: " << fit.exponent
              << "\nscale: " << fit.scale << "\nmax_abs_residual: " << fit.max_abs_residual << '\n';
    if (o.has_expect) std::cout << "expected: " << o.expect << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cache-oblivious DP closures under a simulated LRU cache"};
    app.require_subcommand(1);

    SolveOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "solve one DP instance and report I/O counts");
    solve->add_option("--problem", solve_opts.problem, "mcm|opt|bst")->required();
    solve->add_option("--algo", solve_opts.algo, "naive|valiant|largemem");
    solve->add_option("--layout", solve_opts.layout, "rowmajor|morton");
    solve->add_option("--cache-m", solve_opts.cache_m, "cache capacity in words");
    solve->add_option("--cache-b", solve_opts.cache_b, "cache line size in words");
    solve->add_option("--trace-dump", solve_opts.trace_dump, "write R/W address trace to file");
    solve->add_option("instance", solve_opts.instance, "instance file or inline text")->required();

    ParseOptions parse_opts;
    auto* parse = app.add_subcommand("parse", "CYK membership with I/O counts");
    parse->add_option("--grammar", parse_opts.grammar, "grammar file")->required();
    parse->add_option("--input", parse_opts.input, "input string or file (omit for the empty string)");
    parse->add_option("--algo", parse_opts.algo, "naive|oblivious");
    parse->add_option("--layout", parse_opts.layout, "rowmajor|morton");
    parse->add_option("--cache-m", parse_opts.cache_m, "cache capacity in words");
    parse->add_option("--cache-b", parse_opts.cache_b, "cache line size in words");

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "run a benchmark grid, emit CSV");
    bench->add_option("--problem", bench_opts.problem, "mcm|opt|bst");
    bench->add_option("--sizes", bench_opts.sizes, "comma list of instance sizes");
    bench->add_option("--cache-m", bench_opts.cache_m, "comma list of cache sizes");
    bench->add_option("--cache-b", bench_opts.cache_b, "comma list of line sizes");
    bench->add_option("--algo", bench_opts.algos, "comma list of algorithms");
    bench->add_option("--layout", bench_opts.layouts, "comma list of layouts");
    bench->add_option("--seed", bench_opts.seed, "instance seed");
    bench->add_option("--csv", bench_opts.csv, "output path (stdout if omitted)");

    CdagOptions cdag_opts;
    auto* cdag = app.add_subcommand("cdag", "structural checks on the closure CDAG");
    cdag->add_option("--n", cdag_opts.n, "input size");
    cdag->add_option("--check", cdag_opts.check, "counts|wcover|lemma1|lemma4|dominator|pebble");
    cdag->add_option("--tree-shape", cdag_opts.shape, "balanced|leftchain");
    cdag->add_option("--seed", cdag_opts.seed, "sampling seed");
    cdag->add_option("--export", cdag_opts.export_path, "write edge list to file");

    FitOptions fit_opts;
    auto* fit = app.add_subcommand("fit", "log-log scaling fit over CSV rows");
    fit->add_option("--csv", fit_opts.csv, "benchmark CSV")->required();
    fit->add_option("--x", fit_opts.x, "varied parameter: n|M|B");
    fit->add_option("--filter", fit_opts.filter, "comma list of key=value row filters");
    fit->add_option("--expect", fit_opts.expect, "expected exponent (report only)")
        ->each([&](const std::string&) { fit_opts.has_expect = true; });

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(solve_opts);
        if (parse->parsed()) return cmd_parse(parse_opts);
        if (bench->parsed()) return cmd_bench(bench_opts);
        if (cdag->parsed()) return cmd_cdag(cdag_opts);
        if (fit->parsed()) return cmd_fit(fit_opts);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    } catch (const CliInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::NotCNF& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::EmptyInstance& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::ProbabilityMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::InsufficientData& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const dpio::Error& e) {
        // geometry, tall-cache, size-cap and other configuration failures
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
