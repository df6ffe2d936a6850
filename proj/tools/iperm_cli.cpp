// iperm-cli: sort, transform, verify, count, bench and convert.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 usage error.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "iperm/alloc_probe.hpp"
#include "iperm/core_model.hpp"
#include "iperm/io.hpp"
#include "iperm/oracle.hpp"
#include "iperm/report.hpp"
#include "iperm/sorting.hpp"
#include "iperm/transforms.hpp"
#include "iperm/views.hpp"

using namespace iperm;

namespace {

enum Exit { kOk = 0, kValidation = 1, kIo = 2, kUsage = 3 };

struct Failure {
  Exit code;
  std::string what;
};

using Clock = std::chrono::steady_clock;
using CV = CountingView<SpanView>;
using CCV = CountingView<ConstSpanView>;

bool use_color() {
  const char* mode = std::getenv("IPERM_COLOR");
  if (mode && std::string_view(mode) == "never") return false;
  return isatty(STDERR_FILENO) != 0;
}

void diagnose(const std::string& what) {
  if (use_color()) {
    std::fprintf(stderr, "\033[1;31merror:\033[0m %s\n", what.c_str());
  } else {
    std::fprintf(stderr, "error: %s\n", what.c_str());
  }
}

Exit exit_for(Errc code) {
  switch (code) {
    case Errc::Io: return kIo;
    case Errc::DegreeOutOfRange:
    case Errc::EnumerationTooLarge: return kUsage;
    default: return kValidation;
  }
}

std::string join(const std::vector<Key>& values, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::uint64_t elapsed_ns(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

// Output ---------------------------------------------------------------------

struct OutputOptions {
  std::string path;
  std::string format;  // empty: same as input
};

void write_output(const OutputOptions& out, KeyArray values, SemanticState state,
                  io::Format input_format) {
  io::DataFile file;
  file.values = std::move(values);
  file.state = state;
  file.format = input_format;
  if (out.format == "text") file.format = io::Format::Text;
  if (out.format == "binary") file.format = io::Format::Binary;
  if (out.path.empty() || out.path == "-") {
    if (file.format == io::Format::Binary) {
      auto bytes = io::encode_binary(file.values);
      std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    } else {
      std::fputs(io::format_text(file).c_str(), stdout);
    }
    return;
  }
  io::write_file(out.path, file);
}

void write_report(const std::string& path, const TransformReport& report) {
  if (path.empty()) return;
  const std::string text = to_key_value(report);
  if (path == "-") {
    std::fputs(text.c_str(), stderr);
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  std::fputs(text.c_str(), f);
  std::fclose(f);
}

// Sorting --------------------------------------------------------------------

int sort_words(SortAlgorithm algo) {
  namespace w = scalar_words;
  if (algo == SortAlgorithm::StableAux) {
    return std::max({w::stable_rank_permutation, w::apply_forward, w::map_to_perm,
                     w::associative_permute, w::fill_forward});
  }
  if (algo == SortAlgorithm::StablePreserving) {
    return std::max({w::stable_rank_permutation, w::apply_forward, w::map_to_perm_out,
                     w::apply_inverse});
  }
  return std::max({w::to_idempotent_unstable, w::map_to_perm, w::associative_permute,
                   w::fill_forward});
}

template <class V, class E>
void sort_views(SortAlgorithm algo, V a, E aux) {
  switch (algo) {
    case SortAlgorithm::UnstableInPlace: sort_unstable_inplace(a); break;
    case SortAlgorithm::StableAux: sort_stable_aux(a, aux); break;
    case SortAlgorithm::StablePreserving: sort_stable_preserving(a, aux); break;
  }
}

/// Sorts `keys` in place. Timing, allocation and access counts come from one
/// run through counting views when `counted` is set, otherwise from a bare
/// run with zero reads/writes reported.
TransformReport sort_with_report(SortAlgorithm algo, KeyArray& keys, bool counted) {
  require_keys_in_range(keys);
  const bool stable = algo != SortAlgorithm::UnstableInPlace;
  KeyArray aux(stable ? keys.size() : 0);
  TransformReport report;
  report.operation = "sort-" + std::string(to_string(algo));
  report.n = keys.size();
  report.aux_words = sort_words(algo);
  AccessCounts counts;
  alloc_probe::Scope heap;
  auto start = Clock::now();
  if (counted) {
    sort_views(algo, CV(SpanView(keys), counts), CV(SpanView(aux), counts));
  } else {
    sort_views(algo, SpanView(keys), SpanView(aux));
  }
  report.wall_ns = elapsed_ns(start);
  report.heap_bytes = heap.delta().bytes;
  report.reads = counts.reads;
  report.writes = counts.writes;
  return report;
}

SortAlgorithm parse_algo(const std::string& name) {
  auto algo = parse_sort_algorithm(name);
  if (!algo) throw Failure{kUsage, "unknown algorithm '" + name + "'"};
  return *algo;
}

// Transforms -----------------------------------------------------------------

struct TransformSpec {
  std::string name;
  std::vector<SemanticState> accepts;
  int words;
};

const std::vector<TransformSpec>& transform_specs() {
  using S = SemanticState;
  namespace w = scalar_words;
  static const std::vector<TransformSpec> specs = {
      {"to-idempotent", {S::RawMap}, w::to_idempotent_unstable},
      {"to-perm", {S::IdempotentMap}, w::map_to_perm},
      {"to-perm-quadratic", {S::IdempotentMap}, w::map_to_perm_quadratic},
      {"to-map", {S::IdempotentPerm}, w::perm_to_map_quadratic},
      {"invert", {S::IdempotentPerm, S::InverseIdempotentPerm, S::RankPerm}, w::invert_bit_tagged},
      {"assoc-permute", {S::IdempotentPerm}, w::associative_permute},
      {"fill-forward", {S::InverseIdempotentPerm, S::Gamma}, w::fill_forward},
      {"map-from-inverse", {S::InverseIdempotentPerm}, w::map_from_inverse},
      {"multiset-stream", {S::InverseIdempotentPerm}, w::multiset_stream},
  };
  return specs;
}

/// Picks the input state: the header's if it names an accepted state,
/// otherwise the first accepted state the values satisfy.
SemanticState resolve_state(const TransformSpec& spec, const io::DataFile& file) {
  if (file.state &&
      std::find(spec.accepts.begin(), spec.accepts.end(), *file.state) != spec.accepts.end()) {
    if (auto v = check_state(file.values, *file.state); !v) {
      throw Failure{kValidation, std::string(to_string(*file.state)) + ": " + v.reason};
    }
    return *file.state;
  }
  std::string reasons;
  for (auto state : spec.accepts) {
    auto v = check_state(file.values, state);
    if (v) return state;
    reasons += (reasons.empty() ? "" : "; ") + std::string(to_string(state)) + ": " + v.reason;
  }
  throw Failure{kValidation, reasons};
}

SemanticState post_state(const std::string& op, SemanticState in) {
  using S = SemanticState;
  if (op == "to-idempotent" || op == "to-map" || op == "map-from-inverse") return S::IdempotentMap;
  if (op == "to-perm" || op == "to-perm-quadratic") return S::IdempotentPerm;
  if (op == "assoc-permute") return S::Gamma;
  if (op == "invert") {
    if (in == S::RankPerm) return S::RankPerm;
    return in == S::IdempotentPerm ? S::InverseIdempotentPerm : S::IdempotentPerm;
  }
  return S::SortedMultiset;
}

/// Runs `op` on `a` (replacing it with the result) and fills in the report.
void run_transform(const std::string& op, SemanticState in, KeyArray& a, TransformReport& r) {
  AccessCounts c;
  CV view(SpanView(a), c);
  alloc_probe::Scope heap;
  auto start = Clock::now();
  if (op == "to-idempotent") {
    to_idempotent_unstable(view);
  } else if (op == "to-perm") {
    map_to_perm(view);
  } else if (op == "to-perm-quadratic") {
    map_to_perm_quadratic(view);
  } else if (op == "to-map") {
    perm_to_map_quadratic(view);
  } else if (op == "invert") {
    if (in == SemanticState::RankPerm) {
      invert_sign_tagged(view);
      r.aux_words = scalar_words::invert_sign_tagged;
    } else {
      BitScratch scratch(a.size());
      invert_bit_tagged(view, scratch);
      r.scratch_bits = scratch.size();
    }
  } else if (op == "assoc-permute") {
    associative_permute(view);
  } else if (op == "fill-forward") {
    fill_forward(view);
  } else if (op == "map-from-inverse") {
    KeyArray out(a.size());
    map_from_inverse(CCV(ConstSpanView(a), c), CV(SpanView(out), c));
    a = std::move(out);
  }
  r.wall_ns = elapsed_ns(start);
  r.heap_bytes = heap.delta().bytes;
  r.reads = c.reads;
  r.writes = c.writes;
}

// Commands -------------------------------------------------------------------

struct CommonOptions {
  std::string in;
  OutputOptions out;
  std::string report;
};

int cmd_sort(const CommonOptions& o, const std::string& algo_name) {
  auto algo = parse_algo(algo_name);
  auto file = io::read_file(o.in);
  auto report = sort_with_report(algo, file.values, !o.report.empty());
  write_output(o.out, std::move(file.values), SemanticState::SortedMultiset, file.format);
  write_report(o.report, report);
  return kOk;
}

int cmd_transform(const CommonOptions& o, const std::string& op) {
  const auto& specs = transform_specs();
  auto spec = std::find_if(specs.begin(), specs.end(), [&](auto& s) { return s.name == op; });
  if (spec == specs.end()) throw Failure{kUsage, "unknown operation '" + op + "'"};
  auto file = io::read_file(o.in);
  auto in = resolve_state(*spec, file);

  if (op == "multiset-stream") {
    std::FILE* sink = stdout;
    if (!o.out.path.empty() && o.out.path != "-") {
      sink = std::fopen(o.out.path.c_str(), "w");
      if (!sink) throw Error(Errc::Io, "cannot open '" + o.out.path + "' for writing");
    }
    multiset_stream(ConstSpanView(file.values),
                    [&](Key v) { std::fprintf(sink, "%lld\n", static_cast<long long>(v)); });
    if (sink != stdout) std::fclose(sink);
    return kOk;
  }

  TransformReport report;
  report.operation = op;
  report.n = file.values.size();
  report.aux_words = spec->words;
  run_transform(op, in, file.values, report);
  auto post = post_state(op, in);
  if (auto v = check_state(file.values, post); !v) {
    throw Failure{kValidation, "output fails " + std::string(to_string(post)) + ": " + v.reason};
  }
  write_output(o.out, std::move(file.values), post, file.format);
  write_report(o.report, report);
  return kOk;
}

int cmd_verify(const std::string& in, const std::string& state_name) {
  auto state = parse_state(state_name);
  if (!state) throw Failure{kUsage, "unknown state '" + state_name + "'"};
  auto file = io::read_file(in);
  if (auto v = check_state(file.values, *state); !v) {
    std::printf("invalid: %s\n", v.reason.c_str());
    return kValidation;
  }
  using S = SemanticState;
  if (*state == S::IdempotentMap || *state == S::IdempotentPerm ||
      *state == S::InverseIdempotentPerm) {
    if (file.values.empty()) {
      std::printf("k=0 A= C= c'=\n");
      return kOk;
    }
    auto d = decompose(file.values, *state);
    std::printf("k=%zu A=%s C=%s c'=%s\n", d.degree, join(d.fixed_indices).c_str(),
                join(d.boundaries).c_str(), join(d.cardinalities).c_str());
  } else {
    std::printf("valid state=%s n=%zu\n", state_name.c_str(), file.values.size());
  }
  return kOk;
}

int cmd_count(std::size_t n, std::optional<std::size_t> k, const std::string& family_name,
              bool enumerate) {
  if (n < 1) throw Failure{kUsage, "--n must be at least 1"};
  if (family_name != "idempotent" && family_name != "multiset") {
    throw Failure{kUsage, "unknown family '" + family_name + "'"};
  }
  auto family = family_name == "idempotent" ? oracle::Family::Idempotent : oracle::Family::Multiset;
  if (enumerate && n > oracle::kMaxEnumerationLength) {
    throw Failure{kUsage, "--enumerate requires n <= " +
                              std::to_string(oracle::kMaxEnumerationLength)};
  }
  std::printf("n=%zu family=%s\n", n, family_name.c_str());
  if (k) {
    auto count = family == oracle::Family::Idempotent ? oracle::cardinality_idempotent(n, *k)
                                                      : oracle::cardinality_multiset(n, *k);
    std::printf("k=%zu count=%s\n", *k, count.str().c_str());
    if (enumerate) {
      auto e = oracle::enumeration_table(n, family).per_degree[*k - 1];
      std::printf("enumerated=%s %s\n", e.str().c_str(), e == count ? "MATCH" : "MISMATCH");
      return e == count ? kOk : kValidation;
    }
    return kOk;
  }
  auto table = oracle::formula_table(n, family);
  for (std::size_t d = 1; d <= n; ++d) {
    std::printf("k=%zu count=%s\n", d, table.per_degree[d - 1].str().c_str());
  }
  std::printf("total=%s\n", table.total.str().c_str());
  if (enumerate) {
    auto e = oracle::enumeration_table(n, family);
    bool match = e == table;
    std::printf("enumerated=%s %s\n", e.total.str().c_str(), match ? "MATCH" : "MISMATCH");
    return match ? kOk : kValidation;
  }
  return kOk;
}

KeyArray generate(std::size_t n, const std::string& dist, std::mt19937_64& rng) {
  KeyArray a(n);
  std::uniform_int_distribution<Key> key(1, static_cast<Key>(n));
  if (dist == "uniform" || dist == "sorted" || dist == "reverse-sorted") {
    for (auto& v : a) v = key(rng);
    if (dist == "sorted") std::sort(a.begin(), a.end());
    if (dist == "reverse-sorted") std::sort(a.begin(), a.end(), std::greater<>());
  } else if (dist == "constant") {
    std::fill(a.begin(), a.end(), key(rng));
  } else if (dist == "few-distinct") {
    Key pool[16];
    for (auto& p : pool) p = key(rng);
    std::uniform_int_distribution<int> pick(0, 15);
    for (auto& v : a) v = pool[pick(rng)];
  } else {
    throw Failure{kUsage, "unknown distribution '" + dist + "'"};
  }
  return a;
}

int cmd_bench(std::size_t n, std::size_t trials, const std::string& algo_name,
              const std::string& dist, std::uint64_t seed) {
  if (n < 1) throw Failure{kUsage, "--n must be at least 1"};
  if (trials < 1) throw Failure{kUsage, "--trials must be at least 1"};
  auto algo = parse_algo(algo_name);
  std::mt19937_64 rng(seed);
  std::uint64_t wall_min = UINT64_MAX, wall_sum = 0, reads_max = 0, writes_max = 0, heap = 0;
  for (std::size_t t = 1; t <= trials; ++t) {
    auto keys = generate(n, dist, rng);
    auto copy = keys;
    auto timed = sort_with_report(algo, keys, false);
    auto counted = sort_with_report(algo, copy, true);
    timed.reads = counted.reads;
    timed.writes = counted.writes;
    if (!std::is_sorted(keys.begin(), keys.end()) || keys != copy) {
      throw Failure{kValidation, "trial " + std::to_string(t) + " produced unsorted output"};
    }
    std::printf("trial=%zu dist=%s %s\n", t, dist.c_str(), to_key_value_line(timed).c_str());
    wall_min = std::min(wall_min, timed.wall_ns);
    wall_sum += timed.wall_ns;
    reads_max = std::max(reads_max, timed.reads);
    writes_max = std::max(writes_max, timed.writes);
    heap = std::max({heap, timed.heap_bytes, counted.heap_bytes});
  }
  std::printf(
      "aggregate operation=sort-%s n=%zu trials=%zu dist=%s wall_ns_min=%llu wall_ns_mean=%llu "
      "reads_max=%llu writes_max=%llu reads_per_n=%.3f writes_per_n=%.3f heap_bytes=%llu\n",
      algo_name.c_str(), n, trials, dist.c_str(), static_cast<unsigned long long>(wall_min),
      static_cast<unsigned long long>(wall_sum / trials),
      static_cast<unsigned long long>(reads_max), static_cast<unsigned long long>(writes_max),
      static_cast<double>(reads_max) / static_cast<double>(n),
      static_cast<double>(writes_max) / static_cast<double>(n),
      static_cast<unsigned long long>(heap));
  if (heap != 0) {
    throw Failure{kValidation,
                  "sort allocated " + std::to_string(heap) + " heap bytes while running"};
  }
  return kOk;
}

int cmd_convert(const CommonOptions& o) {
  auto file = io::read_file(o.in);
  io::DataFile out = file;
  if (o.out.format == "text") out.format = io::Format::Text;
  if (o.out.format == "binary") out.format = io::Format::Binary;
  if (o.out.format.empty()) {
    out.format = file.format == io::Format::Text ? io::Format::Binary : io::Format::Text;
  }
  if (out.format == io::Format::Binary) out.state.reset();
  if (o.out.path.empty() || o.out.path == "-") {
    auto bytes = out.format == io::Format::Binary ? io::encode_binary(out.values)
                                                  : io::format_text(out);
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
  } else {
    io::write_file(o.out.path, out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"In-place transforms between maps, idempotent maps and idempotent permutations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonOptions common;
  auto add_io = [&](CLI::App* cmd, bool report) {
    cmd->add_option("--in", common.in, "input file (text or IPRM binary)")->required();
    cmd->add_option("--out", common.out.path, "output file (default stdout)");
    cmd->add_option("--format", common.out.format, "output format (default: input's)")
        ->check(CLI::IsMember({"text", "binary"}));
    if (report) cmd->add_option("--report", common.report, "write key=value report ('-' = stderr)");
  };

  std::string algo = "unstable";
  auto* sort = app.add_subcommand("sort", "sort keys in [1,n]");
  sort->add_option("--algo", algo, "unstable | stable-aux | stable-preserving");
  add_io(sort, true);

  std::string op;
  auto* transform = app.add_subcommand("transform", "apply one transformation");
  transform->add_option("--op", op,
                        "to-idempotent | to-perm | to-perm-quadratic | to-map | invert | "
                        "assoc-permute | fill-forward | map-from-inverse | multiset-stream")
      ->required();
  add_io(transform, true);

  std::string state;
  std::string verify_in;
  auto* verify = app.add_subcommand("verify", "validate a state and print its decomposition");
  verify->add_option("--state", state, "semantic state name")->required();
  verify->add_option("--in", verify_in, "input file")->required();

  std::size_t count_n = 0;
  std::optional<std::size_t> count_k;
  std::string family = "idempotent";
  bool enumerate = false;
  auto* count = app.add_subcommand("count", "print exact cardinalities");
  count->add_option("--n", count_n, "length")->required();
  count->add_option("--k", count_k, "degree");
  count->add_option("--family", family, "idempotent | multiset");
  count->add_flag("--enumerate", enumerate, "cross-check by brute-force enumeration (n <= 8)");

  std::size_t bench_n = 0, trials = 1;
  std::string dist = "uniform";
  std::uint64_t seed = 1;
  auto* bench = app.add_subcommand("bench", "instrumented sorting benchmark");
  bench->add_option("--n", bench_n, "length")->required();
  bench->add_option("--trials", trials, "number of trials");
  bench->add_option("--algo", algo, "unstable | stable-aux | stable-preserving");
  bench->add_option("--dist", dist, "uniform | constant | sorted | reverse-sorted | few-distinct");
  bench->add_option("--seed", seed, "RNG seed");

  auto* convert = app.add_subcommand("convert", "convert between text and binary formats");
  add_io(convert, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sort) return cmd_sort(common, algo);
    if (*transform) return cmd_transform(common, op);
    if (*verify) return cmd_verify(verify_in, state);
    if (*count) return cmd_count(count_n, count_k, family, enumerate);
    if (*bench) return cmd_bench(bench_n, trials, algo, dist, seed);
    if (*convert) return cmd_convert(common);
  } catch (const Failure& f) {
    diagnose(f.what);
    return f.code;
  } catch (const Error& e) {
    diagnose(std::string(to_string(e.code())) + ": " + e.what());
    return exit_for(e.code());
  } catch (const std::exception& e) {
    diagnose(e.what());
    return kValidation;
  }
  return kUsage;
}
