#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "iperm/alloc_probe.hpp"
#include "iperm/oracle.hpp"
#include "iperm/sorting.hpp"

using namespace iperm;

namespace {

KeyArray sorted_unstable(KeyArray a) {
  sort_unstable_inplace(std::span<Key>(a));
  return a;
}

KeyArray sorted_stable_aux(KeyArray a) {
  KeyArray aux(a.size());
  sort_stable_aux(a, aux);
  return a;
}

KeyArray sorted_stable_preserving(KeyArray a) {
  KeyArray aux(a.size());
  sort_stable_preserving(a, aux);
  return a;
}

std::vector<Key> reference_index_order(const KeyArray& keys) {
  std::vector<oracle::KeyedPair> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i) pairs.emplace_back(keys[i], static_cast<Key>(i + 1));
  std::vector<Key> order;
  for (auto [k, i] : oracle::reference_stable_sort(pairs)) order.push_back(i);
  return order;
}

// Final position of each original index, recovered from the σ and π′ stages
// of the stable-aux pipeline.
std::vector<Key> stable_aux_index_order(KeyArray a) {
  const std::size_t n = a.size();
  KeyArray aux(n);
  KeyArray sigma, pi;
  sort_stable_aux(SpanView(a), SpanView(aux), [&](std::string_view stage, const auto& view) {
    KeyArray snapshot(n);
    for (std::size_t p = 1; p <= n; ++p) snapshot[p - 1] = view.get(static_cast<Key>(p));
    if (stage == "rank-perm") sigma = snapshot;
    if (stage == "idempotent-perm") pi = snapshot;
  });
  std::vector<Key> order(n);
  for (std::size_t p = 0; p < n; ++p) {
    order[static_cast<std::size_t>(std::abs(pi[p]) - 1)] = sigma[p];
  }
  return order;
}

std::vector<Key> keyed_index_order(KeyArray keys) {
  KeyArray sats(keys.size()), aux(keys.size());
  std::iota(sats.begin(), sats.end(), Key{1});
  sort_stable_preserving_keyed(keys, sats, aux);
  return sats;
}

// Records every value read and fails if a write stores something never read.
class ProvenanceView {
 public:
  using value_type = Key;

  ProvenanceView(std::span<Key> data, std::set<Key>& seen, int& violations)
      : data_(data), seen_(&seen), violations_(&violations) {}

  std::size_t size() const { return data_.size(); }
  Key get(Key pos) const {
    Key v = data_[static_cast<std::size_t>(pos - 1)];
    seen_->insert(v);
    return v;
  }
  void set(Key pos, Key value) const {
    if (!seen_->contains(value)) ++*violations_;
    data_[static_cast<std::size_t>(pos - 1)] = value;
  }

 private:
  std::span<Key> data_;
  std::set<Key>* seen_;
  int* violations_;
};

KeyArray random_keys(std::size_t n, std::mt19937_64& rng) {
  KeyArray a(n);
  std::uniform_int_distribution<Key> key(1, static_cast<Key>(n));
  for (auto& v : a) v = key(rng);
  return a;
}

}  // namespace

TEST_CASE("each pipeline sorts the worked examples") {
  const KeyArray iota{2, 2, 7, 7, 5, 7, 7, 8, 9, 2};
  const KeyArray m{2, 2, 2, 5, 7, 7, 7, 7, 8, 9};
  for (auto sort : {sorted_unstable, sorted_stable_aux, sorted_stable_preserving}) {
    CHECK(sort(iota) == m);
    CHECK(sort({3, 1, 3}) == KeyArray{1, 3, 3});
    CHECK(sort({1}) == KeyArray{1});
    CHECK(sort({}) == KeyArray{});
    CHECK(sort({4, 3, 2, 1}) == KeyArray{1, 2, 3, 4});
    CHECK(sort({2, 2, 2}) == KeyArray{2, 2, 2});
  }
}

TEST_CASE("every map with n <= 6 sorts correctly under all pipelines") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& f : oracle::enumerate_all_maps(n)) {
      auto expect = oracle::reference_sort(f);
      REQUIRE(sorted_unstable(f) == expect);
      REQUIRE(sorted_stable_aux(f) == expect);
      REQUIRE(sorted_stable_preserving(f) == expect);
    }
  }
}

TEST_CASE("stable pipelines keep equal keys in input order, n <= 6") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& f : oracle::enumerate_all_maps(n)) {
      auto expect = reference_index_order(f);
      REQUIRE(stable_aux_index_order(f) == expect);
      REQUIRE(keyed_index_order(f) == expect);
    }
  }
}

TEST_CASE("stability on random arrays") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_keys(1 + rng() % 3000, rng);
    auto expect = reference_index_order(f);
    CHECK(stable_aux_index_order(f) == expect);
    CHECK(keyed_index_order(f) == expect);
  }
}

TEST_CASE("keyed sort moves satellites with their keys") {
  KeyArray keys{3, 1, 3, 2};
  KeyArray sats{30, 10, 31, 20};
  KeyArray aux(4);
  sort_stable_preserving_keyed(keys, sats, aux);
  CHECK(keys == KeyArray{1, 2, 3, 3});
  CHECK(sats == KeyArray{10, 20, 30, 31});
}

TEST_CASE("preserving pipeline only writes values it has read") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_keys(1 + rng() % 500, rng);
    KeyArray a = f, aux(f.size());
    std::set<Key> seen;
    int violations = 0;
    sort_stable_preserving(ProvenanceView(a, seen, violations), SpanView(aux));
    CHECK(violations == 0);
    CHECK(a == oracle::reference_sort(f));
  }
}

TEST_CASE("out-of-range keys are rejected before any mutation") {
  for (KeyArray bad : {KeyArray{0, 1}, KeyArray{1, 3}, KeyArray{-1, 2}}) {
    KeyArray a = bad, aux(bad.size());
    CHECK_THROWS_AS(sort_unstable_inplace(std::span<Key>(a)), Error);
    CHECK_THROWS_AS(sort_stable_aux(a, aux), Error);
    CHECK_THROWS_AS(sort_stable_preserving(a, aux), Error);
    CHECK(a == bad);
    try {
      sort_unstable_inplace(std::span<Key>(a));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::KeyOutOfRange);
    }
  }
  KeyArray a{1, 2}, shortaux(1);
  CHECK_THROWS_AS(sort_stable_aux(a, shortaux), Error);
}

TEST_CASE("sort requests dispatch by algorithm name") {
  CHECK(parse_sort_algorithm("unstable") == SortAlgorithm::UnstableInPlace);
  CHECK(parse_sort_algorithm("stable-aux") == SortAlgorithm::StableAux);
  CHECK(parse_sort_algorithm("stable-preserving") == SortAlgorithm::StablePreserving);
  CHECK_FALSE(parse_sort_algorithm("quick"));
  for (auto algo : {SortAlgorithm::UnstableInPlace, SortAlgorithm::StableAux,
                    SortAlgorithm::StablePreserving}) {
    CHECK(parse_sort_algorithm(to_string(algo)) == algo);
    SortRequest request{{3, 1, 3}, algo, std::nullopt};
    if (algo != SortAlgorithm::UnstableInPlace) request.aux = KeyArray(3);
    run(request);
    CHECK(request.keys == KeyArray{1, 3, 3});
  }
  SortRequest missing{{1, 1}, SortAlgorithm::StableAux, std::nullopt};
  CHECK_THROWS_AS(run(missing), Error);
  SortRequest extra{{1, 1}, SortAlgorithm::UnstableInPlace, KeyArray(2)};
  CHECK_THROWS_AS(run(extra), Error);
}

TEST_CASE("sorting allocates nothing beyond the caller's buffers") {
  std::mt19937_64 rng(3);
  auto a = random_keys(100000, rng);
  KeyArray b = a, c = a, aux(a.size());
  alloc_probe::Scope scope;
  sort_unstable_inplace(std::span<Key>(a));
  sort_stable_aux(b, aux);
  sort_stable_preserving(c, aux);
  CHECK(scope.delta().allocations == 0);
  CHECK(a == b);
  CHECK(b == c);
  CHECK(std::is_sorted(a.begin(), a.end()));
}
