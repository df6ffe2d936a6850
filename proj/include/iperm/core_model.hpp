#pragma once

// Array substrate and semantic states shared by every transformation.
//
// All values and positions are 1-based: an array of length n stores keys in
// [1, n] at rest and in [-n, n] \ {0} while a sign-tagged state is live.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iperm {

using Key = std::int64_t;
using KeyArray = std::vector<Key>;

/// Largest supported array length; one bit of the word is reserved for the
/// sign tag and one more for the temporary offsets used by the O(kn) passes.
inline constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 62;

enum class Errc {
  KeyOutOfRange,
  NeedsBitTag,
  LengthOverflow,
  LengthMismatch,
  InvalidState,
  DegreeOutOfRange,
  EnumerationTooLarge,
  ScratchNotClear,
  Io,
  Format,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

enum class SemanticState {
  RawMap,
  IdempotentMap,
  IdempotentPerm,
  InverseIdempotentPerm,
  Gamma,
  SortedMultiset,
  RankPerm,
};

std::string_view to_string(SemanticState state);
std::optional<SemanticState> parse_state(std::string_view name);

/// The (k, A, C, c') triple of an idempotent object. `fixed_indices` holds A,
/// `boundaries` holds C (c_1 = 1, sentinel n+1 implicit), `cardinalities`
/// holds c'_i = c_{i+1} - c_i.
struct ClassDecomposition {
  std::size_t degree = 0;
  std::vector<Key> fixed_indices;
  std::vector<Key> boundaries;
  std::vector<Key> cardinalities;

  bool operator==(const ClassDecomposition&) const = default;
};

/// Explicit characteristic function: bit i set iff element i is fixed.
struct CharacteristicBits {
  std::vector<bool> bits;

  std::size_t size() const { return bits.size(); }
  std::size_t popcount() const;
};

/// An all-positive permutation of [n] used for stable rearrangement.
class RankPermutation {
 public:
  RankPermutation() = default;
  explicit RankPermutation(std::size_t n) : data_(n, 0) {}
  /// Throws InvalidState unless `values` is a permutation of [n].
  static RankPermutation from_values(KeyArray values);

  std::size_t size() const { return data_.size(); }
  std::span<Key> span() { return data_; }
  std::span<const Key> span() const { return data_; }
  const KeyArray& values() const { return data_; }

 private:
  KeyArray data_;
};

/// Throws LengthOverflow when n exceeds kMaxLength.
void check_length(std::size_t n);

/// Result of a validator: empty `reason` means valid.
struct Validation {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Validation pass() { return {}; }
  static Validation fail(std::string why) { return {false, std::move(why)}; }
};

// Each check returns the first violated condition. The boolean validators
// below are thin wrappers.
Validation check_raw_map(std::span<const Key> a);
Validation check_idempotent_map(std::span<const Key> a);
Validation check_idempotent_perm(std::span<const Key> a);
Validation check_canonical_idempotent_perm(std::span<const Key> a);
Validation check_inverse_idempotent_perm(std::span<const Key> a);
Validation check_gamma(std::span<const Key> a);
Validation check_sorted_multiset(std::span<const Key> a);
Validation check_rank_perm(std::span<const Key> a);
Validation check_state(std::span<const Key> a, SemanticState state);

bool validate_raw_map(std::span<const Key> a);
bool validate_idempotent_map(std::span<const Key> a);
/// Magnitudes form a permutation, negatives (fixed elements) start at 1 and
/// increase by position. Idle elements may appear in any order.
bool validate_idempotent_perm(std::span<const Key> a);
/// validate_idempotent_perm plus: idle elements of each class appear in
/// increasing position order. This is the form map_to_perm produces and the
/// form counted by C(n,k)·k^(n-k).
bool is_canonical_idempotent_perm(std::span<const Key> a);
bool validate_inverse_idempotent_perm(std::span<const Key> a);
bool validate_sorted_multiset(std::span<const Key> a);

/// Requires `state` in {IdempotentMap, IdempotentPerm, InverseIdempotentPerm};
/// throws InvalidState when `a` fails that state's validator.
ClassDecomposition decompose(std::span<const Key> a, SemanticState state);

// Explicit-φ adapters. Sign form is canonical storage.
CharacteristicBits split_sign_tags(std::span<Key> a);
void merge_sign_tags(std::span<Key> a, const CharacteristicBits& phi);

}  // namespace iperm
