#include "iperm/core_model.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace iperm {

namespace {

constexpr std::array<std::pair<SemanticState, std::string_view>, 7> kStateNames{{
    {SemanticState::RawMap, "raw-map"},
    {SemanticState::IdempotentMap, "idempotent-map"},
    {SemanticState::IdempotentPerm, "idempotent-perm"},
    {SemanticState::InverseIdempotentPerm, "inverse-perm"},
    {SemanticState::Gamma, "gamma"},
    {SemanticState::SortedMultiset, "sorted-multiset"},
    {SemanticState::RankPerm, "rank-perm"},
}};

std::string at(std::size_t pos) { return "position " + std::to_string(pos + 1); }

Key magnitude(Key v) { return v < 0 ? -v : v; }

// n-bit scratch owned by the validator; validators are not on the
// space-critical path.
Validation check_magnitudes_permute(std::span<const Key> a) {
  const auto n = static_cast<Key>(a.size());
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Key m = magnitude(a[i]);
    if (m < 1 || m > n) {
      return Validation::fail(at(i) + ": |" + std::to_string(a[i]) + "| outside [1," +
                              std::to_string(n) + "]");
    }
    if (seen[static_cast<std::size_t>(m - 1)]) {
      return Validation::fail(at(i) + ": magnitude " + std::to_string(m) + " repeated");
    }
    seen[static_cast<std::size_t>(m - 1)] = true;
  }
  return Validation::pass();
}

}  // namespace

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::KeyOutOfRange: return "KeyOutOfRange";
    case Errc::NeedsBitTag: return "NeedsBitTag";
    case Errc::LengthOverflow: return "LengthOverflow";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidState: return "InvalidState";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::ScratchNotClear: return "ScratchNotClear";
    case Errc::Io: return "Io";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

std::string_view to_string(SemanticState state) {
  for (const auto& [s, name] : kStateNames) {
    if (s == state) return name;
  }
  return "unknown";
}

std::optional<SemanticState> parse_state(std::string_view name) {
  for (const auto& [s, n] : kStateNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::size_t CharacteristicBits::popcount() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
}

RankPermutation RankPermutation::from_values(KeyArray values) {
  if (auto v = check_rank_perm(values); !v) {
    throw Error(Errc::InvalidState, "not a rank permutation: " + v.reason);
  }
  RankPermutation p;
  p.data_ = std::move(values);
  return p;
}

void check_length(std::size_t n) {
  if (static_cast<std::uint64_t>(n) > kMaxLength) {
    throw Error(Errc::LengthOverflow, "array length " + std::to_string(n) + " exceeds 2^62");
  }
}

Validation check_raw_map(std::span<const Key> a) {
  const auto n = static_cast<Key>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > n) {
      return Validation::fail(at(i) + ": key " + std::to_string(a[i]) + " outside [1," +
                              std::to_string(n) + "]");
    }
  }
  return Validation::pass();
}

Validation check_idempotent_map(std::span<const Key> a) {
  if (auto v = check_raw_map(a); !v) return v;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Key image = a[static_cast<std::size_t>(a[i] - 1)];
    if (image != a[i]) {
      auto x = std::to_string(i + 1);
      return Validation::fail("iota(iota(" + x + ")) != iota(" + x + ")");
    }
  }
  return Validation::pass();
}

Validation check_idempotent_perm(std::span<const Key> a) {
  if (a.empty()) return Validation::pass();
  if (auto v = check_magnitudes_permute(a); !v) return v;
  Key last_fixed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= 0) continue;
    Key m = -a[i];
    if (last_fixed == 0 && m != 1) {
      return Validation::fail("first fixed element is " + std::to_string(m) + ", expected 1");
    }
    if (m <= last_fixed) {
      return Validation::fail(at(i) + ": fixed element " + std::to_string(m) +
                              " not greater than previous " + std::to_string(last_fixed));
    }
    last_fixed = m;
  }
  if (last_fixed == 0) return Validation::fail("no fixed (negative) element");
  return Validation::pass();
}

Validation check_canonical_idempotent_perm(std::span<const Key> a) {
  if (auto v = check_idempotent_perm(a); !v) return v;
  // Within a class the idle values are consecutive, so the class-ordering
  // condition is: an idle value v > 1 whose predecessor v-1 is also idle
  // must sit to the right of v-1. Record positions by value in scratch.
  const std::size_t n = a.size();
  std::vector<std::size_t> where(n + 1, 0);
  std::vector<bool> fixed(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    Key m = magnitude(a[i]);
    where[static_cast<std::size_t>(m)] = i;
    fixed[static_cast<std::size_t>(m)] = a[i] < 0;
  }
  for (std::size_t v = 2; v <= n; ++v) {
    if (fixed[v] || fixed[v - 1]) continue;
    if (where[v] < where[v - 1]) {
      return Validation::fail("idle element " + std::to_string(v) + " precedes idle element " +
                              std::to_string(v - 1) + " of the same class");
    }
  }
  return Validation::pass();
}

Validation check_inverse_idempotent_perm(std::span<const Key> a) {
  if (a.empty()) return Validation::pass();
  if (auto v = check_magnitudes_permute(a); !v) return v;
  if (a[0] >= 0) return Validation::fail("position 1 is not fixed (negative)");
  Key last_fixed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= 0) continue;
    if (-a[i] <= last_fixed) {
      return Validation::fail(at(i) + ": fixed element " + std::to_string(-a[i]) +
                              " not greater than previous " + std::to_string(last_fixed));
    }
    last_fixed = -a[i];
  }
  return Validation::pass();
}

Validation check_gamma(std::span<const Key> a) {
  if (a.empty()) return Validation::pass();
  if (a[0] >= 0) return Validation::fail("position 1 is not fixed (negative)");
  const auto n = static_cast<Key>(a.size());
  Key last_fixed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0) {
      if (a[i] != static_cast<Key>(i + 1)) {
        return Validation::fail(at(i) + ": idle position holds " + std::to_string(a[i]));
      }
      continue;
    }
    if (a[i] == 0 || -a[i] > n) return Validation::fail(at(i) + ": value out of range");
    if (-a[i] <= last_fixed) {
      return Validation::fail(at(i) + ": fixed element " + std::to_string(-a[i]) +
                              " not greater than previous " + std::to_string(last_fixed));
    }
    last_fixed = -a[i];
  }
  return Validation::pass();
}

Validation check_sorted_multiset(std::span<const Key> a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1) return Validation::fail(at(i) + ": non-positive element");
    if (i > 0 && a[i] < a[i - 1]) return Validation::fail(at(i) + ": decreasing");
  }
  return Validation::pass();
}

Validation check_rank_perm(std::span<const Key> a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1) return Validation::fail(at(i) + ": non-positive element");
  }
  return check_magnitudes_permute(a);
}

Validation check_state(std::span<const Key> a, SemanticState state) {
  switch (state) {
    case SemanticState::RawMap: return check_raw_map(a);
    case SemanticState::IdempotentMap: return check_idempotent_map(a);
    case SemanticState::IdempotentPerm: return check_idempotent_perm(a);
    case SemanticState::InverseIdempotentPerm: return check_inverse_idempotent_perm(a);
    case SemanticState::Gamma: return check_gamma(a);
    case SemanticState::SortedMultiset: return check_sorted_multiset(a);
    case SemanticState::RankPerm: return check_rank_perm(a);
  }
  return Validation::fail("unknown state");
}

bool validate_raw_map(std::span<const Key> a) { return check_raw_map(a).ok; }
bool validate_idempotent_map(std::span<const Key> a) { return check_idempotent_map(a).ok; }
bool validate_idempotent_perm(std::span<const Key> a) { return check_idempotent_perm(a).ok; }
bool is_canonical_idempotent_perm(std::span<const Key> a) {
  return check_canonical_idempotent_perm(a).ok;
}
bool validate_inverse_idempotent_perm(std::span<const Key> a) {
  return check_inverse_idempotent_perm(a).ok;
}
bool validate_sorted_multiset(std::span<const Key> a) { return check_sorted_multiset(a).ok; }

ClassDecomposition decompose(std::span<const Key> a, SemanticState state) {
  ClassDecomposition d;
  const std::size_t n = a.size();
  switch (state) {
    case SemanticState::IdempotentMap: {
      if (auto v = check_idempotent_map(a); !v) throw Error(Errc::InvalidState, v.reason);
      std::vector<Key> multiplicity(n + 1, 0);
      for (Key v : a) ++multiplicity[static_cast<std::size_t>(v)];
      Key boundary = 1;
      for (std::size_t x = 1; x <= n; ++x) {
        if (a[x - 1] != static_cast<Key>(x)) continue;
        d.fixed_indices.push_back(static_cast<Key>(x));
        d.boundaries.push_back(boundary);
        d.cardinalities.push_back(multiplicity[x]);
        boundary += multiplicity[x];
      }
      break;
    }
    case SemanticState::IdempotentPerm:
    case SemanticState::InverseIdempotentPerm: {
      auto v = state == SemanticState::IdempotentPerm ? check_idempotent_perm(a)
                                                      : check_inverse_idempotent_perm(a);
      if (!v) throw Error(Errc::InvalidState, v.reason);
      auto& positions =
          state == SemanticState::IdempotentPerm ? d.fixed_indices : d.boundaries;
      auto& values = state == SemanticState::IdempotentPerm ? d.boundaries : d.fixed_indices;
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] >= 0) continue;
        positions.push_back(static_cast<Key>(i + 1));
        values.push_back(-a[i]);
      }
      for (std::size_t i = 0; i < d.boundaries.size(); ++i) {
        Key next = i + 1 < d.boundaries.size() ? d.boundaries[i + 1] : static_cast<Key>(n + 1);
        d.cardinalities.push_back(next - d.boundaries[i]);
      }
      break;
    }
    default:
      throw Error(Errc::InvalidState,
                  "cannot decompose state " + std::string(to_string(state)));
  }
  d.degree = d.fixed_indices.size();
  return d;
}

CharacteristicBits split_sign_tags(std::span<Key> a) {
  CharacteristicBits phi;
  phi.bits.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    phi.bits[i] = a[i] < 0;
    a[i] = magnitude(a[i]);
  }
  return phi;
}

void merge_sign_tags(std::span<Key> a, const CharacteristicBits& phi) {
  if (phi.size() != a.size()) {
    throw Error(Errc::LengthMismatch, "characteristic bits length differs from array length");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = phi.bits[i] ? -magnitude(a[i]) : magnitude(a[i]);
  }
}

}  // namespace iperm
