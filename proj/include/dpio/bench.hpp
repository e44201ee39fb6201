#pragma once

// Benchmark harness: seeded instance generators, the (problem, algo, layout,
// n, M, B) grid runner, the stable CSV schema, and log-log scaling fits.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpio/bounds.hpp"
#include "dpio/cache_sim.hpp"
#include "dpio/grammar.hpp"
#include "dpio/kernels.hpp"
#include "dpio/tri_matrix.hpp"
#include "dpio/util.hpp"

namespace dpio {

enum class Problem { Mcm, Opt, Bst };
enum class Algo { Naive, Valiant, LargeMem };

const char* problem_name(Problem p);
const char* algo_name(Algo a);
std::optional<Problem> parse_problem(const std::string& s);
std::optional<Algo> parse_algo(const std::string& s);
std::optional<Layout> parse_layout(const std::string& s);

// Instances are a deterministic function of (problem, n, seed), independent
// of the algorithm and cache configuration they are run under.
McmKernel random_mcm(int n, std::uint64_t seed);
OptKernel random_opt(int n, std::uint64_t seed);
BstKernel random_bst(int n, std::uint64_t seed);

struct GrammarParams {
    int variables = 8;
    int binary_rules = 12;
    int terminal_rules = 8;
    int alphabet = 4;
    double duplicate_rhs_rate = 0.2;
};
Grammar random_grammar(const GrammarParams& params, std::uint64_t seed);
std::string random_string(const Grammar& g, int n, std::uint64_t seed);
// A string derived from the start symbol, when one of the requested length
// can be found; used to exercise accepting parses.
std::optional<std::string> random_derivation(const Grammar& g, int len, Rng& rng);

struct BenchPoint {
    Problem problem;
    Algo algo;
    Layout layout;
    int n;
    std::uint64_t cache_m;
    std::uint64_t cache_b;
};

struct BenchRow {
    BenchPoint point;
    int padded_dim;
    CacheStats stats;
    double bound_nr;
    double bound_rc;
};

// Runs one grid point on the seeded instance. Throws CacheTooSmall for a
// large-memory run whose cache cannot pin the inputs.
BenchRow run_bench_point(const BenchPoint& p, std::uint64_t seed);

// Cartesian product in the given list order; rows come out config-ordered.
// Throws BadGeometry unless every (M, B) is tall (M >= B^2).
std::vector<BenchRow> run_bench_grid(Problem problem, const std::vector<int>& sizes,
                                     const std::vector<std::uint64_t>& ms,
                                     const std::vector<std::uint64_t>& bs,
                                     const std::vector<Algo>& algos,
                                     const std::vector<Layout>& layouts, std::uint64_t seed);

// Schema: problem,algo,layout,n,M,B,accesses,misses,io,bound_nr,bound_rc
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct CsvRow {
    std::string problem, algo, layout;
    std::uint64_t n = 0, cache_m = 0, cache_b = 0;
    std::uint64_t accesses = 0, misses = 0, io = 0;
    double bound_nr = 0, bound_rc = 0;
};
std::vector<CsvRow> read_csv(std::istream& in);

struct FitResult {
    double exponent = 0;      // slope of log(y) against log(x)
    double scale = 0;         // exp(intercept)
    double max_abs_residual = 0;  // in log space
};

// Least-squares power-law fit. Needs at least 3 points spanning at least 2
// distinct x values.
FitResult fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace dpio
