#include "dpio/cache_sim.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace dpio {

void Tracer::record(Addr addr, std::size_t words, AccessKind kind) {
    for (std::size_t w = 0; w < words; ++w) {
        if (cache_) cache_->access(addr + w, kind);
        if (dump_) (*dump_) << (kind == AccessKind::Read ? "R " : "W ") << (addr + w) << '\n';
    }
}

void replay_trace(std::istream& in, CacheModel& cache) {
    std::string tag;
    Addr addr;
    while (in >> tag >> addr) {
        if (tag == "R") cache.access(addr, AccessKind::Read);
        else if (tag == "W") cache.access(addr, AccessKind::Write);
        else throw SyntaxError("bad trace line tag: " + tag);
    }
}

}  // namespace dpio
