#pragma once

// Linear-time sorting of n keys drawn from [1, n], composed from transforms.
//
//   unstable          f -> ι (exchange) -> π -> γ -> m          keys pass through [-n, n]
//   stable-aux        f -> σ in aux -> ι = f∘σ -> π -> γ -> m  keys pass through [-n, n]
//   stable-preserving f -> σ in aux -> ι = f∘σ -> ranks in aux -> permute ι by ranks
//                     keys are only ever moved, never rewritten
//
// The stage observer receives (stage name, view) after each intermediate
// stage; tests use it to capture σ, ι and π.

#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "iperm/core_model.hpp"
#include "iperm/transforms.hpp"
#include "iperm/views.hpp"

namespace iperm {

enum class SortAlgorithm { UnstableInPlace, StableAux, StablePreserving };

std::string_view to_string(SortAlgorithm algo);
std::optional<SortAlgorithm> parse_sort_algorithm(std::string_view name);

struct NoStageObserver {
  template <class V>
  void operator()(std::string_view, const V&) const {}
};

template <KeyView V, class Observer = NoStageObserver>
void sort_unstable_inplace(V a, Observer&& observe = {}) {
  to_idempotent_unstable(a);
  observe("idempotent-map", a);
  map_to_perm(a);
  observe("idempotent-perm", a);
  associative_permute(a);
  observe("gamma", a);
  fill_forward(a);
}

template <KeyView V, KeyView E, class Observer = NoStageObserver>
void sort_stable_aux(V a, E aux, Observer&& observe = {}) {
  stable_rank_permutation(a, aux);
  observe("rank-perm", aux);
  apply_forward(a, aux);
  observe("idempotent-map", a);
  map_to_perm(a);
  observe("idempotent-perm", a);
  associative_permute(a);
  observe("gamma", a);
  fill_forward(a);
}

/// `keys` is read to compute ranks; `moved` is what gets permuted. For bare
/// keys both are the same view, for keyed sorting `moved` zips satellites.
template <ReadableKeyView K, MovableView M, KeyView E, class Observer = NoStageObserver>
void sort_stable_preserving_carrying(K keys, M moved, E aux, Observer&& observe = {}) {
  stable_rank_permutation(keys, aux);
  observe("rank-perm", aux);
  apply_forward(moved, aux);
  observe("idempotent-map", keys);
  map_to_perm_out(keys, aux);
  observe("ranks", aux);
  apply_inverse(moved, aux);
}

template <KeyView V, KeyView E, class Observer = NoStageObserver>
void sort_stable_preserving(V a, E aux, Observer&& observe = {}) {
  sort_stable_preserving_carrying(a, a, aux, std::forward<Observer>(observe));
}

/// Throws KeyOutOfRange unless every key lies in [1, n].
void require_keys_in_range(std::span<const Key> a);

void sort_unstable_inplace(std::span<Key> a);
void sort_stable_aux(std::span<Key> a, std::span<Key> aux);
void sort_stable_preserving(std::span<Key> a, std::span<Key> aux);
/// Stable sort of keys carrying one satellite word each.
void sort_stable_preserving_keyed(std::span<Key> keys, std::span<Key> satellites,
                                  std::span<Key> aux);

struct SortRequest {
  KeyArray keys;
  SortAlgorithm algorithm = SortAlgorithm::UnstableInPlace;
  std::optional<KeyArray> aux;
};

/// Runs the request's algorithm on `request.keys`. Throws InvalidState unless
/// aux is present exactly for the stable variants.
void run(SortRequest& request);

}  // namespace iperm
