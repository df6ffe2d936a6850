#pragma once

// Element-access views. Every algorithm in transforms.hpp is written against
// these so the same code path runs bare in production and counted or
// audited under test.
//
// Positions are 1-based Keys.

#include <concepts>
#include <cstdint>
#include <span>
#include <utility>

#include "iperm/core_model.hpp"

namespace iperm {

template <class V>
concept ReadableKeyView = requires(const V cv, Key pos) {
  { cv.size() } -> std::convertible_to<std::size_t>;
  { cv.get(pos) } -> std::same_as<Key>;
};

template <class V>
concept KeyView = ReadableKeyView<V> && requires(V v, Key pos, Key value) { v.set(pos, value); };

/// Any view whose elements can be moved between positions; used by the
/// permuting corollaries, which never inspect element values.
template <class V>
concept MovableView = requires(V v, const V cv, Key pos, typename V::value_type value) {
  { cv.size() } -> std::convertible_to<std::size_t>;
  { cv.get(pos) } -> std::convertible_to<typename V::value_type>;
  v.set(pos, value);
};

class SpanView {
 public:
  using value_type = Key;

  explicit SpanView(std::span<Key> data) : data_(data) {}

  std::size_t size() const { return data_.size(); }
  Key get(Key pos) const { return data_[static_cast<std::size_t>(pos - 1)]; }
  void set(Key pos, Key value) const { data_[static_cast<std::size_t>(pos - 1)] = value; }

 private:
  std::span<Key> data_;
};

/// Read-only view; set() is intentionally absent.
class ConstSpanView {
 public:
  using value_type = Key;

  explicit ConstSpanView(std::span<const Key> data) : data_(data) {}

  std::size_t size() const { return data_.size(); }
  Key get(Key pos) const { return data_[static_cast<std::size_t>(pos - 1)]; }

 private:
  std::span<const Key> data_;
};

struct AccessCounts {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;

  std::uint64_t total() const { return reads + writes; }
};

/// Forwards to an inner view and tallies every get/set.
template <class Inner>
class CountingView {
 public:
  using value_type = typename Inner::value_type;

  CountingView(Inner inner, AccessCounts& counts) : inner_(inner), counts_(&counts) {}

  std::size_t size() const { return inner_.size(); }
  value_type get(Key pos) const {
    ++counts_->reads;
    return inner_.get(pos);
  }
  void set(Key pos, value_type value) const
    requires requires(const Inner& i, Key p, value_type v) { i.set(p, v); }
  {
    ++counts_->writes;
    inner_.set(pos, value);
  }

 private:
  Inner inner_;
  AccessCounts* counts_;
};

/// Moves a key array and a parallel satellite array in lockstep.
class ZipView {
 public:
  using value_type = std::pair<Key, Key>;

  ZipView(std::span<Key> keys, std::span<Key> satellites) : keys_(keys), sats_(satellites) {}

  std::size_t size() const { return keys_.size(); }
  value_type get(Key pos) const {
    auto i = static_cast<std::size_t>(pos - 1);
    return {keys_[i], sats_[i]};
  }
  void set(Key pos, value_type value) const {
    auto i = static_cast<std::size_t>(pos - 1);
    keys_[i] = value.first;
    sats_[i] = value.second;
  }

 private:
  std::span<Key> keys_;
  std::span<Key> sats_;
};

inline Key length_of(const auto& view) { return static_cast<Key>(view.size()); }

}  // namespace iperm
