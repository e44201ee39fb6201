#include <doctest.h>

#include "dpio/pebbling.hpp"

using namespace dpio;

TEST_CASE("strategy peaks equal n") {
    for (int n = 2; n <= 20; ++n) CHECK(strategy_peak(n) == n);
}

TEST_CASE("materialized schedules replay to the recurrence peak") {
    for (int n = 2; n <= 10; ++n) {
        auto sched = pebble_strategy(n);
        REQUIRE(sched.steps_materialized);
        CHECK(sched.peak == n);
        CHECK(replay_peak(sched.cdag, sched.steps) == n);
    }
    auto big = pebble_strategy(16);
    CHECK(!big.steps_materialized);
    CHECK(big.peak == 16);
    CHECK_THROWS_AS(pebble_strategy(21), TooLarge);
}

TEST_CASE("schedule really pebbles the target") {
    auto sched = pebble_strategy(6);
    bool target_computed = false;
    int root = sched.cdag.root_id(1, 6);
    for (const auto& st : sched.steps)
        if (st.kind == PebbleStepKind::Compute && st.vertex == root) target_computed = true;
    CHECK(target_computed);
}

TEST_CASE("replay rejects illegal schedules") {
    auto sched = pebble_strategy(3);
    auto bad = sched.steps;
    bad.insert(bad.begin(), {PebbleStepKind::Compute, sched.cdag.root_id(1, 3), -1});
    CHECK_THROWS_AS(replay_peak(sched.cdag, bad), PreconditionViolation);
}

TEST_CASE("exhaustive minimum equals n") {
    CHECK(min_black_pebbles(build_cdag(2)) == 2);
    CHECK(min_black_pebbles(build_cdag(3)) == 3);
    CHECK(min_black_pebbles(build_cdag(4)) == 4);
    CHECK(min_black_pebbles(build_cdag(4, TreeShape::LeftChain)) == 4);
}

TEST_CASE("exhaustive minimum n=5, both shapes") {
    CHECK(min_black_pebbles(build_cdag(5)) == 5);
    CHECK(min_black_pebbles(build_cdag(5, TreeShape::LeftChain)) == 5);
}
