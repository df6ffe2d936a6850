#pragma once

// Brute-force ground truth: exact cardinalities, enumeration of I(n) and
// IP(n), and naive reference implementations. Nothing here shares code with
// transforms.hpp.

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <utility>
#include <vector>

#include "iperm/core_model.hpp"

namespace iperm::oracle {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxEnumerationLength = 8;

enum class Family { Idempotent, Multiset };
enum class CountSource { Formula, Enumeration };

struct CountTable {
  std::size_t n = 0;
  Family family = Family::Idempotent;
  CountSource source = CountSource::Formula;
  std::vector<BigInt> per_degree;  // index k-1 holds the count for degree k
  BigInt total;

  bool operator==(const CountTable& other) const {
    return n == other.n && family == other.family && per_degree == other.per_degree &&
           total == other.total;
  }
};

BigInt binomial(std::size_t n, std::size_t k);

/// |I(n,k)| = |IP(n,k)| = C(n,k)·k^(n-k). Throws DegreeOutOfRange unless
/// 1 <= k <= n.
BigInt cardinality_idempotent(std::size_t n, std::size_t k);
/// |M(n,k)| = C(n,k)·C(n-1,k-1).
BigInt cardinality_multiset(std::size_t n, std::size_t k);

CountTable formula_table(std::size_t n, Family family);
/// Counts enumerated objects per degree; n <= kMaxEnumerationLength.
/// For Multiset the enumeration is of non-decreasing sequences over [n].
CountTable enumeration_table(std::size_t n, Family family);

/// Every ι in I(n), built by choosing the fixed set and then an image for
/// each remaining index. Lexicographic order. Throws EnumerationTooLarge for
/// n > 8.
std::vector<KeyArray> enumerate_idempotent_maps(std::size_t n);
/// Filters all n^n maps through the definition; n <= 6.
std::vector<KeyArray> enumerate_idempotent_maps_by_filter(std::size_t n);
/// Every canonical π in IP(n) (sign-tagged), built by choosing positions A,
/// boundaries C, then distributing idle classes over the free positions with
/// each class's idle values in increasing position order. Lexicographic order.
std::vector<KeyArray> enumerate_idempotent_perms(std::size_t n);
/// Every non-decreasing sequence over [n] of length n.
std::vector<KeyArray> enumerate_sorted_multisets(std::size_t n);
/// All n^n maps from [n] into itself, lexicographic.
std::vector<KeyArray> enumerate_all_maps(std::size_t n);

/// x(i) = m(|p(i)|). Throws LengthMismatch.
KeyArray compose(std::span<const Key> m, std::span<const Key> p);

KeyArray reference_sort(std::span<const Key> a);
/// Places sign(p(x))·x at position |p(x)|. Throws InvalidState if |p| is not
/// a permutation.
KeyArray reference_invert(std::span<const Key> p);
using KeyedPair = std::pair<Key, Key>;
std::vector<KeyedPair> reference_stable_sort(std::span<const KeyedPair> pairs);

/// The idempotent map a canonical π encodes: position x maps to the fixed
/// index of the class containing |π(x)|.
KeyArray reference_perm_to_map(std::span<const Key> p);
/// Ranks of ι's elements (fixed first in each class, idle by position),
/// sign-tagged. Built by sorting (value, is_idle, position) triples.
KeyArray reference_map_to_perm(std::span<const Key> iota);
/// The γ that associative permuting must produce: -a_j at position c_j and
/// the position's own index everywhere else.
KeyArray reference_gamma(std::span<const Key> p);

}  // namespace iperm::oracle
