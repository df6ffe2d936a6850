#include "iperm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace iperm::io {

namespace {

[[noreturn]] void format_error(const std::string& what) { throw Error(Errc::Format, what); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

template <class Int>
Int parse_int(std::string_view token, std::string_view what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    format_error("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

void parse_header(std::string_view line, DataFile& file) {
  line.remove_prefix(1);  // '#'
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !is_space(line[end])) ++end;
    std::string_view field = line.substr(pos, end - pos);
    pos = end;
    if (field.empty()) continue;
    if (field.starts_with("n=")) {
      file.declared_n = parse_int<std::uint64_t>(field.substr(2), "header length");
    } else if (field.starts_with("state=")) {
      auto state = parse_state(field.substr(6));
      if (!state) format_error("unknown state '" + std::string(field.substr(6)) + "'");
      file.state = state;
    }
  }
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint64_t get_u64(std::string_view bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= std::uint64_t{static_cast<unsigned char>(bytes[offset + b])} << (8 * b);
  }
  return v;
}

void check_declared(const DataFile& file) {
  if (file.declared_n && *file.declared_n != file.values.size()) {
    format_error("header declares n=" + std::to_string(*file.declared_n) + " but file holds " +
                 std::to_string(file.values.size()) + " values");
  }
}

}  // namespace

DataFile parse_text(std::string_view text) {
  DataFile file;
  file.format = Format::Text;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    line.remove_prefix(first);
    if (line.starts_with('#')) {
      parse_header(line, file);
      continue;
    }
    std::size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && is_space(line[p])) ++p;
      std::size_t end = p;
      while (end < line.size() && !is_space(line[end])) ++end;
      if (end > p) file.values.push_back(parse_int<Key>(line.substr(p, end - p), "value"));
      p = end;
    }
  }
  check_declared(file);
  return file;
}

std::string format_text(const DataFile& file) {
  std::string out = "# n=" + std::to_string(file.values.size());
  if (file.state) out += " state=" + std::string(to_string(*file.state));
  out += '\n';
  for (std::size_t i = 0; i < file.values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(file.values[i]);
  }
  out += '\n';
  return out;
}

std::string encode_binary(std::span<const Key> values) {
  std::string out(kMagic);
  out.push_back(static_cast<char>(kVersion));
  put_u64(out, values.size());
  for (Key v : values) put_u64(out, static_cast<std::uint64_t>(v));
  return out;
}

DataFile decode_binary(std::string_view bytes) {
  constexpr std::size_t kHeader = 4 + 1 + 8;
  if (bytes.size() < kHeader || !bytes.starts_with(kMagic)) format_error("missing IPRM magic");
  if (static_cast<std::uint8_t>(bytes[4]) != kVersion) {
    format_error("unsupported binary version " +
                 std::to_string(static_cast<unsigned char>(bytes[4])));
  }
  const std::uint64_t n = get_u64(bytes, 5);
  if (n > kMaxLength || (bytes.size() - kHeader) / 8 != n || (bytes.size() - kHeader) % 8 != 0) {
    format_error("binary payload does not hold n=" + std::to_string(n) + " values");
  }
  DataFile file;
  file.format = Format::Binary;
  file.declared_n = n;
  file.values.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    file.values[i] = static_cast<Key>(get_u64(bytes, kHeader + 8 * i));
  }
  return file;
}

DataFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::Io, "error reading '" + path + "'");
  const std::string bytes = buffer.str();
  if (std::string_view(bytes).starts_with(kMagic)) return decode_binary(bytes);
  return parse_text(bytes);
}

void write_file(const std::string& path, const DataFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  const std::string bytes =
      file.format == Format::Binary ? encode_binary(file.values) : format_text(file);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "error writing '" + path + "'");
}

}  // namespace iperm::io
