#pragma once

// In-place transformations among maps, idempotent maps, idempotent
// permutations, their inverses and sorted multisets.
//
// Each algorithm is a template over a view (see views.hpp) and uses a fixed
// number of scalar locals. The span overloads at the bottom are the plain
// entry points; they only check lengths, callers validate states.

#include <cstdint>
#include <span>
#include <vector>

#include "iperm/core_model.hpp"
#include "iperm/views.hpp"

namespace iperm {

/// Caller-owned n-bit scratch. All-zero before and after every borrow.
class BitScratch {
 public:
  explicit BitScratch(std::size_t n) : bits_(n, false) {}

  std::size_t size() const { return bits_.size(); }
  bool test(Key pos) const { return bits_[static_cast<std::size_t>(pos - 1)]; }
  void set(Key pos) { bits_[static_cast<std::size_t>(pos - 1)] = true; }
  void reset(Key pos) { bits_[static_cast<std::size_t>(pos - 1)] = false; }
  bool all_clear() const;

 private:
  std::vector<bool> bits_;
};

enum class InvertMode { SignTag, BitTag };

/// Scalar words each operation keeps live, as reported by the CLI.
namespace scalar_words {
inline constexpr int to_idempotent_unstable = 2;
inline constexpr int stable_rank_permutation = 2;
inline constexpr int apply_forward = 4;
inline constexpr int apply_inverse = 3;
inline constexpr int invert_sign_tagged = 4;
inline constexpr int invert_bit_tagged = 5;
inline constexpr int map_to_perm = 2;
inline constexpr int map_to_perm_out = 2;
inline constexpr int map_to_perm_quadratic = 3;
inline constexpr int perm_to_map_quadratic = 5;
inline constexpr int map_from_inverse = 1;
inline constexpr int fill_forward = 2;
inline constexpr int multiset_stream = 2;
inline constexpr int associative_permute = 4;
}  // namespace scalar_words

// Maps -> idempotent maps ----------------------------------------------------

/// Unstable: exchange D_i with D[D_i] until D[D_i] = D_i, then advance.
/// Every exchange fixes one value for good, so at most n exchanges happen.
template <KeyView V>
void to_idempotent_unstable(V d) {
  const Key n = length_of(d);
  Key i = 1;
  while (i <= n) {
    const Key v = d.get(i);
    const Key image = d.get(v);
    if (image == v) {
      ++i;
      continue;
    }
    d.set(i, image);
    d.set(v, v);
  }
}

/// Writes σ into `out` such that f∘σ is idempotent and stable: slot v
/// receives the first occurrence of value v, the slots of values absent from
/// f receive the remaining occurrences in scan order. `f` is only read.
///
/// Two passes. A single pass can hand slot v to a duplicate before the first
/// occurrence of v has been seen (f = (1,1,2)).
template <ReadableKeyView F, KeyView E>
void stable_rank_permutation(const F& f, E out) {
  const Key n = length_of(f);
  for (Key i = 1; i <= n; ++i) out.set(i, 0);
  for (Key i = 1; i <= n; ++i) {
    const Key v = f.get(i);
    if (out.get(v) == 0) out.set(v, i);
  }
  Key free_slot = 1;
  for (Key i = 1; i <= n; ++i) {
    if (out.get(f.get(i)) == i) continue;
    while (out.get(free_slot) != 0) ++free_slot;
    out.set(free_slot, i);
    ++free_slot;
  }
}

// Permuting by a separate permutation --------------------------------------

/// a(i) <- a(σ(i)) for all i. σ is consumed: every visited σ(p) is reset to p,
/// which doubles as the done marker, so σ ends as the identity.
template <MovableView V, KeyView S>
void apply_forward(V a, S sigma) {
  const Key n = length_of(sigma);
  for (Key i = 1; i <= n; ++i) {
    if (sigma.get(i) == i) continue;
    const typename V::value_type held = a.get(i);
    Key cur = i;
    for (;;) {
      const Key next = sigma.get(cur);
      sigma.set(cur, cur);
      if (next == i) break;
      a.set(cur, a.get(next));
      cur = next;
    }
    a.set(cur, held);
  }
}

/// a(σ⁻(i)) <- a(i) for all i, by exchanging along each cycle of σ⁻.
/// σ⁻ ends as the identity.
template <MovableView V, KeyView S>
void apply_inverse(V a, S sigma_inv) {
  const Key n = length_of(sigma_inv);
  for (Key i = 1; i <= n; ++i) {
    for (Key j = sigma_inv.get(i); j != i; j = sigma_inv.get(i)) {
      const typename V::value_type held = a.get(i);
      a.set(i, a.get(j));
      a.set(j, held);
      sigma_inv.set(i, sigma_inv.get(j));
      sigma_inv.set(j, j);
    }
  }
}

// Inversion -----------------------------------------------------------------

/// Inverts an all-positive permutation, using the sign bit as the visited tag.
/// Throws NeedsBitTag, before touching anything, if any element is negative.
template <KeyView V>
void invert_sign_tagged(V a) {
  const Key n = length_of(a);
  for (Key i = 1; i <= n; ++i) {
    if (a.get(i) < 0) {
      throw Error(Errc::NeedsBitTag,
                  "sign-tag inversion needs an all-positive permutation; use BitTag");
    }
  }
  for (Key i = 1; i <= n; ++i) {
    if (a.get(i) < 0) continue;
    Key prev = i;
    Key cur = a.get(i);
    while (cur != i) {
      const Key next = a.get(cur);
      a.set(cur, -prev);
      prev = cur;
      cur = next;
    }
    a.set(i, -prev);
  }
  for (Key i = 1; i <= n; ++i) a.set(i, -a.get(i));
}

/// Inverts a sign-tagged permutation (π or π⁻) keeping each element's tag:
/// a value ±c at position x becomes ±x at position c. Scratch bit p marks
/// "position p finalized" and is cleared again before returning.
template <KeyView V>
void invert_bit_tagged(V a, BitScratch& scratch) {
  const Key n = length_of(a);
  if (scratch.size() != a.size()) {
    throw Error(Errc::LengthMismatch, "bit scratch length differs from array length");
  }
  if (!scratch.all_clear()) throw Error(Errc::ScratchNotClear, "bit scratch not zeroed");
  for (Key i = 1; i <= n; ++i) {
    if (scratch.test(i)) continue;
    Key pos = i;
    Key value = a.get(i);
    for (;;) {
      const Key target = value < 0 ? -value : value;
      const Key next = a.get(target);
      a.set(target, value < 0 ? -pos : pos);
      scratch.set(target);
      if (target == i) break;
      pos = target;
      value = next;
    }
  }
  for (Key i = 1; i <= n; ++i) scratch.reset(i);
}

// Idempotent maps <-> idempotent permutations -------------------------------

/// ι -> π in place, O(n). Four passes: mark fixed points -1; decrement the
/// fixed slot once per idle copy; prefix-sum the negatives; assign ranks
/// right to left so idle ranks follow position order within each class.
template <KeyView V>
void map_to_perm(V d) {
  const Key n = length_of(d);
  for (Key i = 1; i <= n; ++i) {
    if (d.get(i) == i) d.set(i, -1);
  }
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v > 0) d.set(v, d.get(v) - 1);
  }
  Key sum = 0;
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v < 0) {
      sum += v;
      d.set(i, sum);
    }
  }
  for (Key i = n; i >= 1; --i) {
    const Key v = d.get(i);
    if (v > 0) {
      const Key slot = d.get(v) + 1;
      d.set(v, slot);
      d.set(i, 1 - slot);
    }
  }
}

/// Same ranks as map_to_perm, computed into `out` and stored as magnitudes.
/// `a` is only read; `out` need not be zeroed.
template <ReadableKeyView F, KeyView E>
void map_to_perm_out(const F& a, E out) {
  const Key n = length_of(a);
  for (Key i = 1; i <= n; ++i) out.set(i, a.get(i) == i ? -1 : 0);
  for (Key i = 1; i <= n; ++i) {
    const Key v = a.get(i);
    if (v != i) out.set(v, out.get(v) - 1);
  }
  Key sum = 0;
  for (Key i = 1; i <= n; ++i) {
    const Key v = out.get(i);
    if (v < 0) {
      sum += v;
      out.set(i, sum);
    }
  }
  for (Key i = n; i >= 1; --i) {
    const Key v = a.get(i);
    if (v != i) {
      const Key slot = out.get(v) + 1;
      out.set(v, slot);
      out.set(i, 1 - slot);
    }
  }
  for (Key i = 1; i <= n; ++i) {
    const Key v = out.get(i);
    if (v < 0) out.set(i, -v);
  }
}

/// ι -> π in place, O(kn): for each fixed point in position order, scan for
/// its idle copies and hand out consecutive ranks. Ranks already handed out
/// are parked above n until the final pass so later scans cannot mistake them
/// for unprocessed copies.
template <KeyView V>
void map_to_perm_quadratic(V d) {
  const Key n = length_of(d);
  Key rank = 1;
  for (Key i = 1; i <= n; ++i) {
    if (d.get(i) != i) continue;
    d.set(i, -rank);
    for (Key j = 1; j <= n; ++j) {
      if (d.get(j) == i) d.set(j, ++rank + n);
    }
    ++rank;
  }
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v > n) d.set(i, v - n);
  }
}

/// π -> ι in place, O(kn): each fixed element -c_i at a_i becomes a_i and so
/// does every idle value strictly between c_i and the next boundary. Rewritten
/// elements are parked above n until the final pass.
template <KeyView V>
void perm_to_map_quadratic(V d) {
  const Key n = length_of(d);
  Key prev_pos = 0;
  Key prev_boundary = 0;
  for (Key i = 1; i <= n + 1; ++i) {
    Key boundary = n + 1;
    if (i <= n) {
      const Key v = d.get(i);
      if (v >= 0) continue;
      boundary = -v;
    }
    if (prev_pos != 0) {
      for (Key j = 1; j <= n; ++j) {
        const Key v = d.get(j);
        if (v > prev_boundary && v < boundary) d.set(j, prev_pos + n);
      }
      d.set(prev_pos, prev_pos + n);
    }
    prev_pos = i;
    prev_boundary = boundary;
  }
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v > n) d.set(i, v - n);
  }
}

// From the inverse -------------------------------------------------------------

/// ι from π⁻ into a separate array: a fixed value c sets ι(c) = c, an idle
/// value inherits ι of its left neighbour's magnitude.
template <ReadableKeyView F, KeyView E>
void map_from_inverse(const F& d, E out) {
  const Key n = length_of(d);
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v < 0) {
      out.set(-v, -v);
    } else {
      const Key left = d.get(i - 1);
      out.set(v, out.get(left < 0 ? -left : left));
    }
  }
}

/// Negative -> magnitude, positive -> copy of the left neighbour. Turns π⁻ or
/// γ into the sorted multiset; the input cannot be recovered afterwards.
template <KeyView V>
void fill_forward(V d) {
  const Key n = length_of(d);
  Key current = 0;
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v < 0) current = -v;
    d.set(i, current);
  }
}

/// Emits the same n values fill_forward would write, leaving `d` untouched.
template <ReadableKeyView F, class Sink>
void multiset_stream(const F& d, Sink&& emit) {
  const Key n = length_of(d);
  Key current = 0;
  for (Key i = 1; i <= n; ++i) {
    const Key v = d.get(i);
    if (v < 0) current = -v;
    emit(current);
  }
}

// Associative permuting ------------------------------------------------------

/// π -> γ in place: the outer cycle-leader pass moves positive (idle) elements
/// home, where they read π(x) = x; whenever a negative (fixed) element lands
/// on the leader, the inner pass inverts negatives along the cycle, storing
/// the negated former position, until a positive element arrives. When the
/// inner pass reaches the leader itself the cycle is closed.
template <KeyView V>
void associative_permute(V p) {
  const Key n = length_of(p);
  Key i = 1;
  while (i <= n) {
    const Key v = p.get(i);
    if (v < 0 || v == i) {
      ++i;
      continue;
    }
    Key j = v;
    p.set(i, p.get(j));
    p.set(j, j);
    for (;;) {
      const Key w = p.get(i);
      if (w > 0) break;
      const Key k = -w;
      if (k == i) {
        p.set(i, -j);
        break;
      }
      p.set(i, p.get(k));
      p.set(k, -j);
      j = k;
    }
  }
}

// Span entry points ------------------------------------------------------------

void to_idempotent_unstable(std::span<Key> a);
void stable_rank_permutation(std::span<const Key> f, RankPermutation& out);
void apply_forward(std::span<Key> a, RankPermutation& sigma);
void apply_inverse(std::span<Key> a, RankPermutation& sigma_inv);
/// SignTag needs `scratch == nullptr` or ignores it; BitTag requires it.
void invert_inplace(std::span<Key> a, InvertMode mode, BitScratch* scratch = nullptr);
void map_to_perm(std::span<Key> a);
void map_to_perm_out(std::span<const Key> a, std::span<Key> out);
void map_to_perm_quadratic(std::span<Key> a);
void perm_to_map_quadratic(std::span<Key> a);
void map_from_inverse(std::span<const Key> a, std::span<Key> out);
void fill_forward_inplace(std::span<Key> a);
void associative_permute(std::span<Key> a);

}  // namespace iperm
