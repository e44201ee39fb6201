#include <doctest.h>

#include <sstream>

#include "dpio/cache_sim.hpp"
#include "dpio/util.hpp"

using namespace dpio;

TEST_CASE("cold misses then an LRU hit") {
    CacheModel c(4, 1);
    for (Addr a : {1, 2, 3, 4}) c.access(a, AccessKind::Read);
    c.access(1, AccessKind::Read);
    CHECK(c.stats().misses == 4);
    CHECK(c.stats().hits == 1);
    CHECK(c.stats().accesses == 5);
}

TEST_CASE("capacity eviction") {
    CacheModel c(4, 1);
    for (Addr a : {1, 2, 3, 4, 5, 1}) c.access(a, AccessKind::Read);
    CHECK(c.stats().misses == 6);
    CHECK(c.stats().hits == 0);
}

TEST_CASE("sequential scan misses once per line") {
    CacheModel c(8, 4);
    for (Addr a = 0; a < 64; ++a) c.access(a, AccessKind::Read);
    CHECK(c.stats().misses == 16);
    CHECK(c.stats().hits == 48);
}

TEST_CASE("dirty evictions count as extra I/O") {
    CacheModel c(2, 1);
    c.access(0, AccessKind::Write);
    c.access(1, AccessKind::Read);
    c.access(2, AccessKind::Read);  // evicts dirty line 0
    c.access(3, AccessKind::Read);  // evicts clean line 1
    CHECK(c.stats().misses == 4);
    CHECK(c.stats().evicted_dirty_writes == 1);
    CHECK(c.stats().io() == 5);
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(CacheModel(4, 3), BadGeometry);
    CHECK_THROWS_AS(CacheModel(2, 4), BadGeometry);
    CHECK_THROWS_AS(CacheModel(0, 1), BadGeometry);
    CHECK_NOTHROW(CacheModel(384, 1));  // 2n*wordsPerCell capacities need not be powers of two
}

TEST_CASE("reset clears counters and residency") {
    CacheModel c(4, 1);
    c.access(7, AccessKind::Write);
    c.reset();
    CHECK(c.stats().accesses == 0);
    CHECK(c.stats().misses == 0);
    c.access(7, AccessKind::Read);
    CHECK(c.stats().misses == 1);  // not resident after reset
}

TEST_CASE("LRU stack property: more capacity never misses more") {
    Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Addr> trace;
        for (int i = 0; i < 400; ++i) trace.push_back(static_cast<Addr>(rng.range(0, 96)));
        std::uint64_t prev = ~0ULL;
        for (std::uint64_t m : {8, 16, 32, 64}) {
            CacheModel c(m, 4);
            for (Addr a : trace) c.access(a, AccessKind::Read);
            CHECK(c.stats().misses <= prev);
            prev = c.stats().misses;
        }
    }
}

TEST_CASE("null tracer is a no-op, attached tracer counts") {
    Tracer none;
    none.read(5, 3);  // no crash, nothing to count
    CHECK(!none.active());

    CacheModel c(16, 2);
    Tracer t(&c);
    t.write(0, 3);
    CHECK(c.stats().accesses == 3);
}

TEST_CASE("trace dump replays to identical counters") {
    CacheModel c(8, 2);
    std::ostringstream dump;
    Tracer t(&c, &dump);
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Addr a = static_cast<Addr>(rng.range(0, 40));
        if (rng.real01() < 0.5) t.read(a); else t.write(a);
    }
    CacheModel replayed(8, 2);
    std::istringstream in(dump.str());
    replay_trace(in, replayed);
    CHECK(replayed.stats().accesses == c.stats().accesses);
    CHECK(replayed.stats().misses == c.stats().misses);
    CHECK(replayed.stats().evicted_dirty_writes == c.stats().evicted_dirty_writes);
}
