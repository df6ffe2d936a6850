#include "iperm/report.hpp"

namespace iperm {

std::string to_key_value(const TransformReport& r) {
  std::string out;
  auto line = [&out](const char* key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  line("operation", r.operation);
  line("n", std::to_string(r.n));
  line("wall_ns", std::to_string(r.wall_ns));
  line("reads", std::to_string(r.reads));
  line("writes", std::to_string(r.writes));
  line("aux_words", std::to_string(r.aux_words));
  line("scratch_bits", std::to_string(r.scratch_bits));
  line("heap_bytes", std::to_string(r.heap_bytes));
  return out;
}

std::string to_key_value_line(const TransformReport& r) {
  std::string out = to_key_value(r);
  out.pop_back();
  for (char& c : out) {
    if (c == '\n') c = ' ';
  }
  return out;
}

}  // namespace iperm
