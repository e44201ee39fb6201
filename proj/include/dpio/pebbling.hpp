#pragma once

// Black pebble game on the closure CDAG: a pebble may be placed on a vertex
// whose predecessors are all pebbled (sliding one of them onto the target is
// allowed), inputs are pebblable at any time, and pebbles may be discarded.
// The goal is a pebble on the root of the full problem.

#include <vector>

#include "dpio/cdag.hpp"

namespace dpio {

enum class PebbleStepKind : std::uint8_t { Compute, Discard };

struct PebbleStep {
    PebbleStepKind kind;
    int vertex;
    int slide_from = -1;  // Compute only: predecessor pebble consumed by the move
};

struct PebbleSchedule {
    Cdag cdag;                       // left-chain G(n) the steps refer to
    std::vector<PebbleStep> steps;   // materialized only up to the step cap
    bool steps_materialized = false;
    int peak = 0;                    // maximum simultaneous pebbles
};

// Largest n whose schedule is materialized step by step; the recursive
// strategy replays every subproblem from scratch, so step counts grow as
// 3^n and larger n only report the peak.
inline constexpr int kMaxMaterializedPebbleN = 13;

// Accumulator strategy: hold one pebble per partially combined subproblem,
// recompute the larger side of each split before the smaller. Peak is n.
// Valid for 2 <= n <= 20.
PebbleSchedule pebble_strategy(int n);

// Peak pebble count of the strategy, from the per-split recurrence (no
// schedule walk). Matches the replayed peak of materialized schedules.
int strategy_peak(int n);

// Replays a schedule against the CDAG, checking move legality; returns the
// peak pebble count.
int replay_peak(const Cdag& g, const std::vector<PebbleStep>& steps);

// Exact minimum via breadth-first search over pebble configurations.
// Capped at 64 vertices (n <= 5 for G(n)).
int min_black_pebbles(const Cdag& g);

}  // namespace dpio
