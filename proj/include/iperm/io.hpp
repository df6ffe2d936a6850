#pragma once

// Data file formats.
//
// Text:   optional header line "# n=<N> state=<state>", then whitespace
//         separated signed decimal integers.
// Binary: "IPRM", version byte 1, little-endian u64 n, n little-endian i64.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iperm/core_model.hpp"

namespace iperm::io {

enum class Format { Text, Binary };

struct DataFile {
  KeyArray values;
  std::optional<std::uint64_t> declared_n;
  std::optional<SemanticState> state;
  Format format = Format::Text;
};

inline constexpr std::string_view kMagic = "IPRM";
inline constexpr std::uint8_t kVersion = 1;

/// Throws Error{Format} on malformed content (bad token, header/count
/// mismatch, unknown state).
DataFile parse_text(std::string_view text);
std::string format_text(const DataFile& file);

std::string encode_binary(std::span<const Key> values);
DataFile decode_binary(std::string_view bytes);

/// Detects the format by the magic prefix. Throws Error{Io} when the file
/// cannot be read.
DataFile read_file(const std::string& path);
void write_file(const std::string& path, const DataFile& file);

}  // namespace iperm::io
