#pragma once

// Counts global operator new calls. Only binaries that link the
// iperm_alloc_probe object library get the counting allocator.

#include <cstdint>

namespace iperm::alloc_probe {

struct Snapshot {
  std::uint64_t allocations = 0;
  std::uint64_t bytes = 0;
};

Snapshot now();

class Scope {
 public:
  Scope() : start_(now()) {}
  Snapshot delta() const {
    Snapshot end = now();
    return {end.allocations - start_.allocations, end.bytes - start_.bytes};
  }

 private:
  Snapshot start_;
};

}  // namespace iperm::alloc_probe
