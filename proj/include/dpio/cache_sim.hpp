#pragma once

// Fully associative LRU cache simulator over a flat word address space.
// The simulator stores no data: miss counts depend only on the address trace.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dpio/error.hpp"
#include "dpio/util.hpp"

namespace dpio {

using Addr = std::uint64_t;

enum class AccessKind : std::uint8_t { Read, Write };
enum class AccessResult : std::uint8_t { Hit, Miss };

struct CacheStats {
    std::uint64_t accesses = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t evicted_dirty_writes = 0;

    // One I/O per miss plus one per dirty write-back.
    std::uint64_t io() const { return misses + evicted_dirty_writes; }
};

class CacheModel {
  public:
    // M = capacity in words, B = line size in words. B must be a power of
    // two, M a multiple of B. (Benchmark configurations additionally keep M
    // a power of two and tall, M >= B^2; the model itself does not require
    // that so schedules with M = 2n*wordsPerCell remain expressible.)
    CacheModel(std::uint64_t capacity_words, std::uint64_t line_words)
        : capacity_(capacity_words), line_(line_words) {
        if (line_ < 1 || !is_pow2(line_)) throw BadGeometry("line size must be a power of two >= 1");
        if (capacity_ < line_ || capacity_ % line_ != 0)
            throw BadGeometry("capacity must be a positive multiple of the line size");
        lg_line_ = log2_exact(line_);
        max_lines_ = capacity_ / line_;
    }

    AccessResult access(Addr addr, AccessKind kind) {
        ++stats_.accesses;
        std::uint64_t line = addr >> lg_line_;
        if (line >= nodes_.size()) nodes_.resize(line + 1);
        Node& nd = nodes_[line];
        if (nd.resident) {
            ++stats_.hits;
            nd.dirty = nd.dirty || kind == AccessKind::Write;
            touch(line);
            return AccessResult::Hit;
        }
        ++stats_.misses;
        if (resident_count_ == max_lines_) evict_lru();
        nd.resident = true;
        nd.dirty = kind == AccessKind::Write;
        ++resident_count_;
        push_front(line);
        return AccessResult::Miss;
    }

    const CacheStats& stats() const { return stats_; }
    std::uint64_t capacity_words() const { return capacity_; }
    std::uint64_t line_words() const { return line_; }

    void reset() {
        stats_ = CacheStats{};
        nodes_.clear();
        head_ = tail_ = kNil;
        resident_count_ = 0;
    }

  private:
    static constexpr std::uint64_t kNil = ~std::uint64_t{0};

    struct Node {
        std::uint64_t prev = kNil;
        std::uint64_t next = kNil;
        bool resident = false;
        bool dirty = false;
    };

    void push_front(std::uint64_t line) {
        Node& nd = nodes_[line];
        nd.prev = kNil;
        nd.next = head_;
        if (head_ != kNil) nodes_[head_].prev = line;
        head_ = line;
        if (tail_ == kNil) tail_ = line;
    }

    void unlink(std::uint64_t line) {
        Node& nd = nodes_[line];
        if (nd.prev != kNil) nodes_[nd.prev].next = nd.next; else head_ = nd.next;
        if (nd.next != kNil) nodes_[nd.next].prev = nd.prev; else tail_ = nd.prev;
        nd.prev = nd.next = kNil;
    }

    void touch(std::uint64_t line) {
        if (head_ == line) return;
        unlink(line);
        push_front(line);
    }

    void evict_lru() {
        std::uint64_t victim = tail_;
        unlink(victim);
        Node& nd = nodes_[victim];
        nd.resident = false;
        if (nd.dirty) ++stats_.evicted_dirty_writes;
        nd.dirty = false;
        --resident_count_;
    }

    std::uint64_t capacity_;
    std::uint64_t line_;
    int lg_line_ = 0;
    std::uint64_t max_lines_ = 0;
    std::uint64_t resident_count_ = 0;
    std::uint64_t head_ = kNil;
    std::uint64_t tail_ = kNil;
    CacheStats stats_;
    std::vector<Node> nodes_;
};

// Routes word accesses of the traced structures (DP table, grammar group
// table, instance context) to an optional cache model and an optional text
// dump. A default-constructed tracer is a no-op with zero counts.
class Tracer {
  public:
    Tracer() = default;
    explicit Tracer(CacheModel* cache, std::ostream* dump = nullptr) : cache_(cache), dump_(dump) {}

    void read(Addr addr, std::size_t words = 1) { record(addr, words, AccessKind::Read); }
    void write(Addr addr, std::size_t words = 1) { record(addr, words, AccessKind::Write); }

    bool active() const { return cache_ != nullptr || dump_ != nullptr; }
    CacheModel* cache() const { return cache_; }

  private:
    void record(Addr addr, std::size_t words, AccessKind kind);

    CacheModel* cache_ = nullptr;
    std::ostream* dump_ = nullptr;
};

// Bump allocator for the simulated word address space. Regions are dense so
// cache line ids stay small.
class AddressSpace {
  public:
    Addr alloc(std::uint64_t words) {
        Addr base = next_;
        next_ += words;
        return base;
    }
    std::uint64_t used() const { return next_; }

  private:
    Addr next_ = 0;
};

// Replays a trace dump (`R <addr>` / `W <addr>` lines) through a cache model.
void replay_trace(std::istream& in, CacheModel& cache);

}  // namespace dpio
