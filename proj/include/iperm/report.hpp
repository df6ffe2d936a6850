#pragma once

// Instrumentation record emitted by the CLI's sort, transform and bench
// commands as key=value lines.

#include <cstdint>
#include <string>

namespace iperm {

struct TransformReport {
  std::string operation;
  std::uint64_t n = 0;
  std::uint64_t wall_ns = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  int aux_words = 0;
  std::uint64_t scratch_bits = 0;
  /// Heap bytes requested while the operation ran (0 when not probed).
  std::uint64_t heap_bytes = 0;
};

std::string to_key_value(const TransformReport& report);
/// Same fields on one space-separated line, no trailing newline.
std::string to_key_value_line(const TransformReport& report);

}  // namespace iperm
