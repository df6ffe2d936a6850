#include "iperm/sorting.hpp"

#include <array>

namespace iperm {

namespace {

constexpr std::array<std::pair<SortAlgorithm, std::string_view>, 3> kAlgoNames{{
    {SortAlgorithm::UnstableInPlace, "unstable"},
    {SortAlgorithm::StableAux, "stable-aux"},
    {SortAlgorithm::StablePreserving, "stable-preserving"},
}};

void require_aux(std::span<const Key> a, std::span<const Key> aux) {
  if (aux.size() != a.size()) {
    throw Error(Errc::LengthMismatch, "aux length " + std::to_string(aux.size()) +
                                          " differs from key count " + std::to_string(a.size()));
  }
}

}  // namespace

std::string_view to_string(SortAlgorithm algo) {
  for (const auto& [a, name] : kAlgoNames) {
    if (a == algo) return name;
  }
  return "unknown";
}

std::optional<SortAlgorithm> parse_sort_algorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgoNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

void require_keys_in_range(std::span<const Key> a) {
  check_length(a.size());
  const auto n = static_cast<Key>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > n) {
      throw Error(Errc::KeyOutOfRange, "key " + std::to_string(a[i]) + " at position " +
                                           std::to_string(i + 1) + " outside [1," +
                                           std::to_string(n) + "]");
    }
  }
}

void sort_unstable_inplace(std::span<Key> a) {
  require_keys_in_range(a);
  sort_unstable_inplace(SpanView(a));
}

void sort_stable_aux(std::span<Key> a, std::span<Key> aux) {
  require_keys_in_range(a);
  require_aux(a, aux);
  sort_stable_aux(SpanView(a), SpanView(aux));
}

void sort_stable_preserving(std::span<Key> a, std::span<Key> aux) {
  require_keys_in_range(a);
  require_aux(a, aux);
  sort_stable_preserving(SpanView(a), SpanView(aux));
}

void sort_stable_preserving_keyed(std::span<Key> keys, std::span<Key> satellites,
                                  std::span<Key> aux) {
  require_keys_in_range(keys);
  require_aux(keys, aux);
  require_aux(keys, satellites);
  sort_stable_preserving_carrying(SpanView(keys), ZipView(keys, satellites), SpanView(aux));
}

void run(SortRequest& request) {
  const bool stable = request.algorithm != SortAlgorithm::UnstableInPlace;
  if (stable != request.aux.has_value()) {
    throw Error(Errc::InvalidState,
                stable ? "stable sorting needs an aux buffer" : "unstable sort takes no aux");
  }
  switch (request.algorithm) {
    case SortAlgorithm::UnstableInPlace:
      sort_unstable_inplace(request.keys);
      break;
    case SortAlgorithm::StableAux:
      sort_stable_aux(request.keys, *request.aux);
      break;
    case SortAlgorithm::StablePreserving:
      sort_stable_preserving(request.keys, *request.aux);
      break;
  }
}

}  // namespace iperm
