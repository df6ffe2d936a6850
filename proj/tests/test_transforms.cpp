#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "iperm/alloc_probe.hpp"
#include "iperm/core_model.hpp"
#include "iperm/oracle.hpp"
#include "iperm/transforms.hpp"

using namespace iperm;

namespace {

const KeyArray kPi{3, -1, 6, 8, -4, 7, -5, -9, -10, 2};
const KeyArray kPiInv{-2, 10, 1, -5, -7, 3, 6, 4, -8, -9};
const KeyArray kIota{2, 2, 7, 7, 5, 7, 7, 8, 9, 2};
const KeyArray kGamma{-2, 2, 3, -5, -7, 6, 7, 8, -8, -9};
const KeyArray kMultiset{2, 2, 2, 5, 7, 7, 7, 7, 8, 9};
const KeyArray kStablePi{2, -1, 6, 7, -4, 8, -5, -9, -10, 3};

template <class F>
KeyArray applied(KeyArray a, F&& op) {
  op(std::span<Key>(a));
  return a;
}

KeyArray inverted(KeyArray a) {
  BitScratch scratch(a.size());
  invert_inplace(a, InvertMode::BitTag, &scratch);
  return a;
}

KeyArray filled(KeyArray a) {
  fill_forward_inplace(a);
  return a;
}

std::vector<KeyArray> all_signed_idempotent_perms(std::size_t n) {
  std::vector<KeyArray> out;
  KeyArray base(n);
  std::iota(base.begin(), base.end(), Key{1});
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      KeyArray p = base;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) p[i] = -p[i];
      }
      if (validate_idempotent_perm(p)) out.push_back(p);
    }
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

KeyArray random_signed_perm(std::size_t n, std::mt19937_64& rng) {
  // A canonical-agnostic idempotent permutation: random ι -> π, then shuffle
  // the idle elements among idle positions.
  KeyArray iota(n);
  std::uniform_int_distribution<Key> key(1, static_cast<Key>(n));
  for (auto& v : iota) v = key(rng);
  to_idempotent_unstable(iota);
  map_to_perm(iota);
  std::vector<std::size_t> idle;
  for (std::size_t i = 0; i < n; ++i) {
    if (iota[i] > 0) idle.push_back(i);
  }
  KeyArray values;
  for (auto i : idle) values.push_back(iota[i]);
  std::shuffle(values.begin(), values.end(), rng);
  for (std::size_t t = 0; t < idle.size(); ++t) iota[idle[t]] = values[t];
  return iota;
}

}  // namespace

TEST_CASE("to_idempotent_unstable") {
  CHECK(applied({3, 1, 3}, [](auto a) { to_idempotent_unstable(a); }) == KeyArray{1, 3, 3});
  CHECK(applied({1, 2, 3}, [](auto a) { to_idempotent_unstable(a); }) == KeyArray{1, 2, 3});
  auto m = applied(kMultiset, [](auto a) { to_idempotent_unstable(a); });
  CHECK(m == KeyArray{2, 2, 2, 7, 5, 7, 7, 8, 9, 7});
  CHECK(validate_idempotent_map(m));
}

TEST_CASE("to_idempotent_unstable yields an idempotent rearrangement of every map, n <= 6") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& f : oracle::enumerate_all_maps(n)) {
      KeyArray a = f;
      to_idempotent_unstable(a);
      REQUIRE(validate_idempotent_map(a));
      CHECK(oracle::reference_sort(a) == oracle::reference_sort(f));
    }
  }
}

TEST_CASE("stable_rank_permutation") {
  auto sigma_of = [](const KeyArray& f) {
    RankPermutation out(f.size());
    stable_rank_permutation(f, out);
    return out.values();
  };
  CHECK(sigma_of({3, 1, 3}) == KeyArray{2, 3, 1});
  CHECK(sigma_of({1, 2, 3}) == KeyArray{1, 2, 3});
  // First occurrences claim their own slot; duplicates fill 1,3,4,6,10.
  CHECK(sigma_of(kIota) == KeyArray{2, 1, 4, 6, 5, 7, 3, 8, 9, 10});
  // A single left-to-right pass would give σ = identity here, which is not
  // idempotent after rearranging.
  CHECK(sigma_of({1, 1, 2}) == KeyArray{1, 3, 2});
  KeyArray f{3, 1, 3};
  KeyArray copy = f;
  sigma_of(f);
  CHECK(f == copy);
}

TEST_CASE("stable rearrangement matches the index-paired reference, all f with n <= 5") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& f : oracle::enumerate_all_maps(n)) {
      KeyArray keys = f;
      KeyArray index(n);
      std::iota(index.begin(), index.end(), Key{1});
      RankPermutation sigma(n);
      stable_rank_permutation(keys, sigma);
      REQUIRE(check_rank_perm(sigma.values()).ok);
      apply_forward(ZipView(keys, index), SpanView(sigma.span()));
      REQUIRE(validate_idempotent_map(keys));
      // Reference: stable order of (key, index) pairs per key value.
      std::vector<oracle::KeyedPair> pairs;
      for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(f[i], static_cast<Key>(i + 1));
      auto ref = oracle::reference_stable_sort(pairs);
      std::map<Key, std::vector<Key>> order;
      for (auto [k, i] : ref) order[k].push_back(i);
      std::map<Key, std::vector<Key>> got;
      for (std::size_t x = 0; x < n; ++x) {
        if (keys[x] == static_cast<Key>(x + 1)) got[keys[x]].insert(got[keys[x]].begin(), index[x]);
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (keys[x] != static_cast<Key>(x + 1)) got[keys[x]].push_back(index[x]);
      }
      CHECK(got == order);
    }
  }
}

TEST_CASE("apply_forward") {
  auto run = [](KeyArray a, KeyArray s) {
    auto sigma = RankPermutation::from_values(s);
    apply_forward(a, sigma);
    CHECK(sigma.values() == [&] {
      KeyArray id(s.size());
      std::iota(id.begin(), id.end(), Key{1});
      return id;
    }());
    return a;
  };
  CHECK(run({3, 1, 3}, {2, 3, 1}) == KeyArray{1, 3, 3});
  CHECK(run({9, 8, 7}, {1, 2, 3}) == KeyArray{9, 8, 7});
  CHECK(run({5, 6, 7, 8}, {2, 1, 4, 3}) == KeyArray{6, 5, 8, 7});
}

TEST_CASE("apply_inverse") {
  auto run = [](KeyArray a, KeyArray s) {
    auto sigma = RankPermutation::from_values(s);
    apply_inverse(a, sigma);
    CHECK(std::is_sorted(sigma.values().begin(), sigma.values().end()));
    return a;
  };
  CHECK(run({1, 2, 3}, {2, 3, 1}) == KeyArray{3, 1, 2});
  CHECK(run({1, 2, 3}, {1, 2, 3}) == KeyArray{1, 2, 3});
  CHECK(run({1, 3, 3}, {2, 1, 3}) == KeyArray{3, 1, 3});
}

TEST_CASE("apply_forward and apply_inverse agree with direct assignment on random permutations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 200;
    KeyArray s(n), a(n);
    std::iota(s.begin(), s.end(), Key{1});
    std::shuffle(s.begin(), s.end(), rng);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<Key>(1000 + i);
    KeyArray forward(n), backward(n);
    for (std::size_t i = 0; i < n; ++i) {
      forward[i] = a[static_cast<std::size_t>(s[i] - 1)];
      backward[static_cast<std::size_t>(s[i] - 1)] = a[i];
    }
    KeyArray f = a, b = a;
    auto s1 = RankPermutation::from_values(s), s2 = RankPermutation::from_values(s);
    apply_forward(f, s1);
    apply_inverse(b, s2);
    CHECK(f == forward);
    CHECK(b == backward);
  }
}

TEST_CASE("invert_inplace") {
  KeyArray a{2, 3, 1};
  invert_inplace(a, InvertMode::SignTag);
  CHECK(a == KeyArray{3, 1, 2});
  CHECK(inverted(kPi) == kPiInv);
  CHECK(inverted(kPiInv) == kPi);

  KeyArray tagged = kPi;
  CHECK_THROWS_AS(invert_inplace(tagged, InvertMode::SignTag), Error);
  try {
    invert_inplace(tagged, InvertMode::SignTag);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NeedsBitTag);
  }
  CHECK(tagged == kPi);
  CHECK_THROWS_AS(invert_inplace(tagged, InvertMode::BitTag, nullptr), Error);
  BitScratch wrong(3);
  CHECK_THROWS_AS(invert_inplace(tagged, InvertMode::BitTag, &wrong), Error);
}

TEST_CASE("scratch is zero after BitTag inversion") {
  KeyArray a = kPi;
  BitScratch scratch(a.size());
  invert_inplace(a, InvertMode::BitTag, &scratch);
  CHECK(scratch.all_clear());
  CHECK(scratch.size() == a.size());
}

TEST_CASE("explicit-φ inversion through SignTag matches BitTag") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& p : oracle::enumerate_idempotent_perms(n)) {
      KeyArray a = p;
      auto phi = split_sign_tags(a);
      invert_inplace(a, InvertMode::SignTag);
      // φ travels with the elements: the fixed element at position x lands at |π(x)|.
      CharacteristicBits phi_inv{std::vector<bool>(n, false)};
      for (std::size_t x = 0; x < n; ++x) {
        if (phi.bits[x]) phi_inv.bits[static_cast<std::size_t>(-p[x] - 1)] = true;
      }
      merge_sign_tags(a, phi_inv);
      CHECK(a == inverted(p));
    }
  }
}

TEST_CASE("inversion involution and oracle agreement, all idempotent perms n <= 6") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& p : all_signed_idempotent_perms(n)) {
      auto inv = inverted(p);
      CHECK(inv == oracle::reference_invert(p));
      CHECK(validate_inverse_idempotent_perm(inv));
      CHECK(inverted(inv) == p);
    }
  }
}

TEST_CASE("inversion involution on 1000 random perms of n = 100000") {
  std::mt19937_64 rng(2024);
  const std::size_t n = 100000;
  BitScratch scratch(n);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    KeyArray p = random_signed_perm(n, rng);
    KeyArray a = p;
    invert_inplace(a, InvertMode::BitTag, &scratch);
    invert_inplace(a, InvertMode::BitTag, &scratch);
    failures += a != p;
  }
  CHECK(failures == 0);
}

TEST_CASE("map_to_perm") {
  CHECK(applied(kIota, [](auto a) { map_to_perm(a); }) == kStablePi);
  CHECK(applied({1, 3, 3}, [](auto a) { map_to_perm(a); }) == KeyArray{-1, 3, -2});
  CHECK(applied({1, 2, 3}, [](auto a) { map_to_perm(a); }) == KeyArray{-1, -2, -3});
}

TEST_CASE("map_to_perm_out") {
  auto out_of = [](const KeyArray& a) {
    KeyArray out(a.size(), 0);
    map_to_perm_out(a, out);
    return out;
  };
  CHECK(out_of({1, 3, 3}) == KeyArray{1, 3, 2});
  CHECK(out_of({1, 2, 3}) == KeyArray{1, 2, 3});
  CHECK(out_of(kIota) == KeyArray{2, 1, 6, 7, 4, 8, 5, 9, 10, 3});
  KeyArray dirty(kIota.size(), 99);
  map_to_perm_out(kIota, dirty);
  CHECK(dirty == out_of(kIota));
}

TEST_CASE("map_to_perm_quadratic") {
  CHECK(applied(kIota, [](auto a) { map_to_perm_quadratic(a); }) == kStablePi);
  CHECK(applied({1}, [](auto a) { map_to_perm_quadratic(a); }) == KeyArray{-1});
  CHECK(applied({1, 3, 3}, [](auto a) { map_to_perm_quadratic(a); }) == KeyArray{-1, 3, -2});
  // A rank handed out early (3 at position 4) equals a later fixed index.
  CHECK(applied({1, 1, 3, 1}, [](auto a) { map_to_perm_quadratic(a); }) ==
        KeyArray{-1, 2, -4, 3});
}

TEST_CASE("perm_to_map_quadratic") {
  CHECK(applied(kPi, [](auto a) { perm_to_map_quadratic(a); }) == kIota);
  CHECK(applied({-1, -2, -3}, [](auto a) { perm_to_map_quadratic(a); }) == KeyArray{1, 2, 3});
  CHECK(applied({-1, 3, -2}, [](auto a) { perm_to_map_quadratic(a); }) == KeyArray{1, 3, 3});
}

TEST_CASE("map_from_inverse") {
  auto out_of = [](const KeyArray& a) {
    KeyArray out(a.size(), 0);
    map_from_inverse(a, out);
    return out;
  };
  CHECK(out_of(kPiInv) == kIota);
  CHECK(out_of({-1}) == KeyArray{1});
  CHECK(out_of({-1, -2, -3}) == KeyArray{1, 2, 3});
}

TEST_CASE("fill_forward_inplace") {
  CHECK(filled(kPiInv) == kMultiset);
  CHECK(filled(kGamma) == kMultiset);
  CHECK(filled({-1, -2, -3}) == KeyArray{1, 2, 3});
}

TEST_CASE("multiset_stream") {
  auto stream = [](const KeyArray& a) {
    KeyArray out;
    multiset_stream(ConstSpanView(a), [&](Key v) { out.push_back(v); });
    return out;
  };
  CHECK(stream(kPiInv) == kMultiset);
  CHECK(stream({-1}) == KeyArray{1});
  CHECK(stream({-1, 2}) == KeyArray{1, 1});
}

TEST_CASE("associative_permute") {
  CHECK(applied(kPi, [](auto a) { associative_permute(a); }) == kGamma);
  CHECK(applied({-1, -2, -3}, [](auto a) { associative_permute(a); }) == KeyArray{-1, -2, -3});
  CHECK(applied({2, -1, 3}, [](auto a) { associative_permute(a); }) == KeyArray{-2, 2, 3});
}

TEST_CASE("exhaustive round trips over every ι, n <= 6") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& iota : oracle::enumerate_idempotent_maps(n)) {
      KeyArray pi = iota;
      map_to_perm(pi);
      REQUIRE(is_canonical_idempotent_perm(pi));
      CHECK(pi == oracle::reference_map_to_perm(iota));
      CHECK(applied(iota, [](auto a) { map_to_perm_quadratic(a); }) == pi);
      CHECK(applied(pi, [](auto a) { perm_to_map_quadratic(a); }) == iota);

      KeyArray out(n, 0);
      map_to_perm_out(iota, out);
      for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == std::abs(pi[i]));

      KeyArray from_inverse(n, 0);
      map_from_inverse(inverted(pi), from_inverse);
      CHECK(from_inverse == iota);

      auto m = filled(inverted(pi));
      CHECK(oracle::compose(m, pi) == iota);
    }
  }
}

TEST_CASE("transform properties over every idempotent perm, n <= 6") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& p : all_signed_idempotent_perms(n)) {
      auto iota = applied(p, [](auto a) { perm_to_map_quadratic(a); });
      CHECK(iota == oracle::reference_perm_to_map(p));
      CHECK(validate_idempotent_map(iota));
      auto m = filled(inverted(p));
      CHECK(validate_sorted_multiset(m));
      CHECK(oracle::compose(m, p) == iota);

      auto gamma = applied(p, [](auto a) { associative_permute(a); });
      CHECK(gamma == oracle::reference_gamma(p));
      CHECK(check_gamma(gamma).ok);
      CHECK(filled(gamma) == m);

      KeyArray streamed;
      multiset_stream(ConstSpanView(inverted(p)), [&](Key v) { streamed.push_back(v); });
      CHECK(streamed == m);
    }
  }
}

TEST_CASE("n = 0 is a no-op everywhere") {
  KeyArray empty;
  to_idempotent_unstable(empty);
  map_to_perm(empty);
  map_to_perm_quadratic(empty);
  perm_to_map_quadratic(empty);
  associative_permute(empty);
  fill_forward_inplace(empty);
  BitScratch scratch(0);
  invert_inplace(empty, InvertMode::BitTag, &scratch);
  invert_inplace(empty, InvertMode::SignTag);
  CHECK(empty.empty());
}

TEST_CASE("in-place transforms allocate nothing") {
  std::mt19937_64 rng(99);
  const std::size_t n = 50000;
  KeyArray f(n);
  std::uniform_int_distribution<Key> key(1, static_cast<Key>(n));
  for (auto& v : f) v = key(rng);
  KeyArray out(n, 0);
  RankPermutation sigma(n);
  BitScratch scratch(n);

  alloc_probe::Scope scope;
  to_idempotent_unstable(std::span<Key>(f));
  map_to_perm_out(f, out);
  KeyArray& iota = f;
  stable_rank_permutation(iota, sigma);
  apply_forward(iota, sigma);
  map_to_perm(iota);
  invert_inplace(iota, InvertMode::BitTag, &scratch);
  invert_inplace(iota, InvertMode::BitTag, &scratch);
  associative_permute(iota);
  fill_forward_inplace(iota);
  CHECK(scope.delta().allocations == 0);
  CHECK(validate_sorted_multiset(iota));
}
