#include <doctest.h>

#include "dpio/bench.hpp"
#include "dpio/kernels.hpp"

using namespace dpio;

namespace {
Tracer silent;
}

TEST_CASE("matrix chain combine") {
    McmKernel k({10, 20, 30, 40});
    CHECK(k.combine({10, 20, 0}, {20, 30, 0}, silent, 0) == CostTriple{10, 30, 6000});
    CHECK(k.combine({10, 20, 0}, {30, 40, 0}, silent, 0).least_optimal());
    CHECK(k.combine({10, 20, 6000}, CostTriple::least(), silent, 0).least_optimal());
    CHECK(k.combine(CostTriple::least(), {10, 20, 0}, silent, 0).least_optimal());
}

TEST_CASE("matrix chain aggregate") {
    McmKernel k({10, 20, 30, 40});
    CHECK(k.aggregate({10, 30, 18000}, {10, 30, 32000}) == CostTriple{10, 30, 18000});
    CHECK(k.aggregate({10, 30, 18000}, CostTriple::least()) == CostTriple{10, 30, 18000});
    CHECK(k.aggregate(CostTriple::least(), {10, 30, 18000}) == CostTriple{10, 30, 18000});
    CHECK(k.aggregate({10, 30, 5}, {10, 30, 5}) == CostTriple{10, 30, 5});
    CHECK(k.least_optimal().least_optimal());
}

TEST_CASE("aggregate is commutative and associative on reachable cells") {
    // Reachable operands of one aggregation share a subproblem: the same
    // endpoint pair, or the least-optimal element.
    Rng rng(99);
    auto check_kernel = [&](auto kernel) {
        using Cell = typename decltype(kernel)::Cell;
        for (int trial = 0; trial < 1000; ++trial) {
            auto lo = static_cast<std::uint32_t>(rng.range(1, 4));
            auto hi = static_cast<std::uint32_t>(rng.range(lo, 5));
            auto random_cell = [&]() -> Cell {
                if (rng.real01() < 0.2) return kernel.least_optimal();
                if constexpr (std::is_same_v<Cell, BstCell>)
                    return Cell{lo, hi, static_cast<double>(rng.range(0, 1000)) / 64.0};
                else
                    return Cell{lo, hi, static_cast<std::uint64_t>(rng.range(0, 1000))};
            };
            auto a = random_cell(), b = random_cell(), c = random_cell();
            CHECK(kernel.aggregate(a, b) == kernel.aggregate(b, a));
            CHECK(kernel.aggregate(a, kernel.aggregate(b, c)) ==
                  kernel.aggregate(kernel.aggregate(a, b), c));
        }
    };
    check_kernel(McmKernel({10, 20, 30}));
    check_kernel(random_opt(4, 7));
    check_kernel(random_bst(4, 7));
}

TEST_CASE("combine never builds a real cell from a least-optimal operand") {
    Rng rng(5);
    McmKernel k({2, 3, 4});
    for (int trial = 0; trial < 200; ++trial) {
        CostTriple c{static_cast<std::uint64_t>(rng.range(1, 9)),
                     static_cast<std::uint64_t>(rng.range(1, 9)),
                     static_cast<std::uint64_t>(rng.range(0, 50))};
        CHECK(k.combine(c, CostTriple::least(), silent, 0).least_optimal());
        CHECK(k.combine(CostTriple::least(), c, silent, 0).least_optimal());
    }
}

TEST_CASE("inputs") {
    McmKernel mcm({10, 20, 30});
    auto cells = init_inputs(mcm);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == CostTriple{10, 20, 0});
    CHECK(cells[1] == CostTriple{20, 30, 0});

    REQUIRE_THROWS_AS(BstKernel({}, {0.4}), ProbabilityMismatch);  // 0.4 != 1
}

TEST_CASE("bst inputs carry the fail-leaf probability") {
    BstKernel k({}, {1.0});
    auto cells = init_inputs(k);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].cost == doctest::Approx(1.0));
}

TEST_CASE("opt inputs are zero-cost edges") {
    auto k = random_opt(2, 3);  // 3 vertices
    auto cells = init_inputs(k);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].cost == 0);
    CHECK(cells[1].cost == 0);
}

TEST_CASE("mcm instance validation") {
    CHECK_THROWS_AS(McmKernel({10}), EmptyInstance);
}

TEST_CASE("bst prefix cost table") {
    SUBCASE("single fail leaf") {
        auto c = bst_prefix_costs({}, {1.0});
        CHECK(c[0] == doctest::Approx(1.0));
    }
    SUBCASE("one key") {
        auto c = bst_prefix_costs({0.5}, {0.25, 0.25});
        CHECK(c[0 * 2 + 0] == doctest::Approx(0.25));
        CHECK(c[1 * 2 + 1] == doctest::Approx(0.25));
        CHECK(c[0 * 2 + 1] == doctest::Approx(1.0));
    }
    SUBCASE("whole range sums to one") {
        auto c = bst_prefix_costs({0.2, 0.3}, {0.1, 0.2, 0.2});
        CHECK(c[0 * 3 + 2] == doctest::Approx(1.0));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(bst_prefix_costs({0.5}, {0.5}), ProbabilityMismatch);
        CHECK_THROWS_AS(bst_prefix_costs({0.5}, {0.25, 0.35}), ProbabilityMismatch);
    }
}

TEST_CASE("recursion-built prefix table equals direct summation") {
    for (int n : {1, 2, 7, 33, 64}) {
        auto k = random_bst(n, static_cast<std::uint64_t>(n) * 31 + 1);
        // reconstruct p, q from the kernel's own inputs and prefix diffs is
        // roundabout; use fresh vectors instead
        Rng rng(static_cast<std::uint64_t>(n) * 31 + 1);
        (void)k;
        std::vector<double> p(std::max(0, n - 1)), q(n);
        double total = 0;
        for (auto& v : p) { v = 0.05 + rng.real01(); total += v; }
        for (auto& v : q) { v = 0.05 + rng.real01(); total += v; }
        for (auto& v : p) v /= total;
        for (auto& v : q) v /= total;
        double s = 0;
        for (double v : p) s += v;
        for (double v : q) s += v;
        for (auto& v : q) v /= s;
        for (auto& v : p) v /= s;
        auto c = bst_prefix_costs(p, q);
        for (int i = 1; i <= n; ++i) {
            for (int j = i; j <= n; ++j) {
                double direct = 0;
                for (int l = i; l <= j - 1; ++l) direct += p[l - 1];
                for (int l = i; l <= j; ++l) direct += q[l - 1];
                CHECK(std::abs(c[(i - 1) * n + (j - 1)] - direct) < 1e-12);
            }
        }
    }
}

TEST_CASE("opt accepts an explicit dense cost table") {
    // 3 vertices, w(0,1,2) = 42 no matter the orientation
    std::vector<std::uint64_t> table(27, 42);
    auto k = OptKernel::from_table(3, table);
    CHECK(k.input_count() == 2);
    auto c = k.combine(k.input(1), k.input(2), silent, 0);
    CHECK(c == CostTriple{1, 3, 42});
    CHECK_THROWS_AS(OptKernel::from_table(3, std::vector<std::uint64_t>(5, 0)), EmptyInstance);

    // table-backed combine traces exactly one context read
    CacheModel cache(64, 1);
    Tracer t(&cache);
    k.combine(k.input(1), k.input(2), t, 0);
    CHECK(cache.stats().accesses == 1);
}
