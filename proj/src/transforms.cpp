#include "iperm/transforms.hpp"

#include <algorithm>

namespace iperm {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(Errc::LengthMismatch, std::string(what) + ": lengths " + std::to_string(a) +
                                          " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

bool BitScratch::all_clear() const {
  return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

void to_idempotent_unstable(std::span<Key> a) {
  check_length(a.size());
  to_idempotent_unstable(SpanView(a));
}

void stable_rank_permutation(std::span<const Key> f, RankPermutation& out) {
  check_length(f.size());
  require_same_length(f.size(), out.size(), "stable_rank_permutation");
  stable_rank_permutation(ConstSpanView(f), SpanView(out.span()));
}

void apply_forward(std::span<Key> a, RankPermutation& sigma) {
  check_length(a.size());
  require_same_length(a.size(), sigma.size(), "apply_forward");
  apply_forward(SpanView(a), SpanView(sigma.span()));
}

void apply_inverse(std::span<Key> a, RankPermutation& sigma_inv) {
  check_length(a.size());
  require_same_length(a.size(), sigma_inv.size(), "apply_inverse");
  apply_inverse(SpanView(a), SpanView(sigma_inv.span()));
}

void invert_inplace(std::span<Key> a, InvertMode mode, BitScratch* scratch) {
  check_length(a.size());
  if (mode == InvertMode::SignTag) {
    invert_sign_tagged(SpanView(a));
    return;
  }
  if (scratch == nullptr) {
    throw Error(Errc::InvalidState, "BitTag inversion requires an n-bit scratch");
  }
  invert_bit_tagged(SpanView(a), *scratch);
}

void map_to_perm(std::span<Key> a) {
  check_length(a.size());
  map_to_perm(SpanView(a));
}

void map_to_perm_out(std::span<const Key> a, std::span<Key> out) {
  check_length(a.size());
  require_same_length(a.size(), out.size(), "map_to_perm_out");
  map_to_perm_out(ConstSpanView(a), SpanView(out));
}

void map_to_perm_quadratic(std::span<Key> a) {
  check_length(a.size());
  map_to_perm_quadratic(SpanView(a));
}

void perm_to_map_quadratic(std::span<Key> a) {
  check_length(a.size());
  perm_to_map_quadratic(SpanView(a));
}

void map_from_inverse(std::span<const Key> a, std::span<Key> out) {
  check_length(a.size());
  require_same_length(a.size(), out.size(), "map_from_inverse");
  map_from_inverse(ConstSpanView(a), SpanView(out));
}

void fill_forward_inplace(std::span<Key> a) {
  check_length(a.size());
  fill_forward(SpanView(a));
}

void associative_permute(std::span<Key> a) {
  check_length(a.size());
  associative_permute(SpanView(a));
}

}  // namespace iperm
