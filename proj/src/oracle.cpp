#include "iperm/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace iperm::oracle {

namespace {

void guard_enumeration(std::size_t n, std::size_t limit) {
  if (n > limit) {
    throw Error(Errc::EnumerationTooLarge, "enumeration limited to n <= " +
                                               std::to_string(limit) + ", got " +
                                               std::to_string(n));
  }
}

void guard_degree(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw Error(Errc::DegreeOutOfRange,
                "degree " + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
  }
}

Key abs_key(Key v) { return v < 0 ? -v : v; }

// Calls `visit` with every k-subset of {first..last} as an increasing vector.
template <class Visit>
void for_each_subset(Key first, Key last, std::size_t k, Visit&& visit) {
  std::vector<Key> chosen;
  auto recurse = [&](auto&& self, Key from) -> void {
    if (chosen.size() == k) {
      visit(chosen);
      return;
    }
    for (Key v = from; v <= last; ++v) {
      if (static_cast<std::size_t>(last - v + 1) < k - chosen.size()) break;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, first);
}

std::size_t count_fixed_points(const KeyArray& iota) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < iota.size(); ++i) {
    if (iota[i] == static_cast<Key>(i + 1)) ++k;
  }
  return k;
}

}  // namespace

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt cardinality_idempotent(std::size_t n, std::size_t k) {
  guard_degree(n, k);
  return binomial(n, k) * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n - k));
}

BigInt cardinality_multiset(std::size_t n, std::size_t k) {
  guard_degree(n, k);
  return binomial(n, k) * binomial(n - 1, k - 1);
}

CountTable formula_table(std::size_t n, Family family) {
  CountTable t;
  t.n = n;
  t.family = family;
  t.source = CountSource::Formula;
  for (std::size_t k = 1; k <= n; ++k) {
    t.per_degree.push_back(family == Family::Idempotent ? cardinality_idempotent(n, k)
                                                        : cardinality_multiset(n, k));
    t.total += t.per_degree.back();
  }
  return t;
}

CountTable enumeration_table(std::size_t n, Family family) {
  guard_enumeration(n, kMaxEnumerationLength);
  CountTable t;
  t.n = n;
  t.family = family;
  t.source = CountSource::Enumeration;
  t.per_degree.assign(n, 0);
  if (family == Family::Idempotent) {
    for (const auto& iota : enumerate_idempotent_maps(n)) {
      ++t.per_degree[count_fixed_points(iota) - 1];
    }
  } else {
    for (const auto& m : enumerate_sorted_multisets(n)) {
      std::size_t distinct = std::set<Key>(m.begin(), m.end()).size();
      ++t.per_degree[distinct - 1];
    }
  }
  for (const auto& c : t.per_degree) t.total += c;
  return t;
}

std::vector<KeyArray> enumerate_idempotent_maps(std::size_t n) {
  guard_enumeration(n, kMaxEnumerationLength);
  std::vector<KeyArray> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  const Key len = static_cast<Key>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    for_each_subset(1, len, k, [&](const std::vector<Key>& fixed) {
      KeyArray iota(n, 0);
      std::vector<std::size_t> idle;
      for (Key a : fixed) iota[static_cast<std::size_t>(a - 1)] = a;
      for (std::size_t x = 0; x < n; ++x) {
        if (iota[x] == 0) idle.push_back(x);
      }
      // Odometer over k^(n-k) choices of image for the idle indices.
      std::vector<std::size_t> digit(idle.size(), 0);
      for (;;) {
        for (std::size_t t = 0; t < idle.size(); ++t) iota[idle[t]] = fixed[digit[t]];
        out.push_back(iota);
        std::size_t t = 0;
        while (t < digit.size() && ++digit[t] == k) digit[t++] = 0;
        if (t == digit.size()) break;
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<KeyArray> enumerate_all_maps(std::size_t n) {
  guard_enumeration(n, 6);
  std::vector<KeyArray> out;
  KeyArray f(n, 1);
  for (;;) {
    out.push_back(f);
    std::size_t t = n;
    while (t > 0 && f[t - 1] == static_cast<Key>(n)) f[--t] = 1;
    if (t == 0) break;
    ++f[t - 1];
  }
  return out;
}

std::vector<KeyArray> enumerate_idempotent_maps_by_filter(std::size_t n) {
  std::vector<KeyArray> out;
  for (auto& f : enumerate_all_maps(n)) {
    bool idempotent = true;
    for (std::size_t x = 0; x < n && idempotent; ++x) {
      idempotent = f[static_cast<std::size_t>(f[x] - 1)] == f[x];
    }
    if (idempotent) out.push_back(std::move(f));
  }
  return out;
}

std::vector<KeyArray> enumerate_idempotent_perms(std::size_t n) {
  guard_enumeration(n, kMaxEnumerationLength);
  std::vector<KeyArray> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  const Key len = static_cast<Key>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    for_each_subset(1, len, k, [&](const std::vector<Key>& positions) {
      for_each_subset(2, len, k - 1, [&](const std::vector<Key>& upper) {
        std::vector<Key> bounds{1};
        bounds.insert(bounds.end(), upper.begin(), upper.end());
        bounds.push_back(len + 1);
        KeyArray pi(n, 0);
        for (std::size_t i = 0; i < k; ++i) {
          pi[static_cast<std::size_t>(positions[i] - 1)] = -bounds[i];
        }
        // One label per free position naming the class its idle value
        // belongs to; distinct label arrangements are the distinct perms.
        std::vector<std::size_t> labels;
        for (std::size_t i = 0; i < k; ++i) {
          labels.insert(labels.end(), static_cast<std::size_t>(bounds[i + 1] - bounds[i] - 1), i);
        }
        do {
          std::vector<Key> next_value(k);
          for (std::size_t i = 0; i < k; ++i) next_value[i] = bounds[i] + 1;
          std::size_t label = 0;
          for (std::size_t x = 0; x < n; ++x) {
            if (pi[x] < 0) continue;
            pi[x] = next_value[labels[label++]]++;
          }
          out.push_back(pi);
          for (std::size_t x = 0; x < n; ++x) {
            if (pi[x] > 0) pi[x] = 0;
          }
        } while (std::next_permutation(labels.begin(), labels.end()));
      });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<KeyArray> enumerate_sorted_multisets(std::size_t n) {
  guard_enumeration(n, kMaxEnumerationLength);
  std::vector<KeyArray> out;
  KeyArray m;
  auto recurse = [&](auto&& self, Key from) -> void {
    if (m.size() == n) {
      out.push_back(m);
      return;
    }
    for (Key v = from; v <= static_cast<Key>(n); ++v) {
      m.push_back(v);
      self(self, v);
      m.pop_back();
    }
  };
  recurse(recurse, 1);
  return out;
}

KeyArray compose(std::span<const Key> m, std::span<const Key> p) {
  if (m.size() != p.size()) {
    throw Error(Errc::LengthMismatch, "compose: multiset and permutation lengths differ");
  }
  KeyArray x(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    x[i] = m[static_cast<std::size_t>(abs_key(p[i]) - 1)];
  }
  return x;
}

KeyArray reference_sort(std::span<const Key> a) {
  KeyArray out(a.begin(), a.end());
  std::sort(out.begin(), out.end());
  return out;
}

KeyArray reference_invert(std::span<const Key> p) {
  const auto n = static_cast<Key>(p.size());
  KeyArray out(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    Key target = abs_key(p[x]);
    if (target < 1 || target > n || out[static_cast<std::size_t>(target - 1)] != 0) {
      throw Error(Errc::InvalidState, "reference_invert: magnitudes are not a permutation");
    }
    Key pos = static_cast<Key>(x + 1);
    out[static_cast<std::size_t>(target - 1)] = p[x] < 0 ? -pos : pos;
  }
  return out;
}

std::vector<KeyedPair> reference_stable_sort(std::span<const KeyedPair> pairs) {
  std::vector<KeyedPair> out(pairs.begin(), pairs.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const KeyedPair& l, const KeyedPair& r) { return l.first < r.first; });
  return out;
}

KeyArray reference_perm_to_map(std::span<const Key> p) {
  std::vector<std::pair<Key, Key>> fixed;  // (boundary c, position a)
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] < 0) fixed.emplace_back(-p[x], static_cast<Key>(x + 1));
  }
  std::sort(fixed.begin(), fixed.end());
  KeyArray iota(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    Key v = abs_key(p[x]);
    auto it = std::upper_bound(fixed.begin(), fixed.end(), std::pair<Key, Key>{v, Key{1} << 62});
    if (it == fixed.begin()) throw Error(Errc::InvalidState, "value below first boundary");
    iota[x] = std::prev(it)->second;
  }
  return iota;
}

KeyArray reference_map_to_perm(std::span<const Key> iota) {
  struct Entry {
    Key value;
    bool idle;
    Key position;
  };
  std::vector<Entry> entries;
  for (std::size_t x = 0; x < iota.size(); ++x) {
    Key pos = static_cast<Key>(x + 1);
    entries.push_back({iota[x], iota[x] != pos, pos});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    return std::tie(l.value, l.idle, l.position) < std::tie(r.value, r.idle, r.position);
  });
  KeyArray pi(iota.size());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    Key rank = static_cast<Key>(r + 1);
    pi[static_cast<std::size_t>(entries[r].position - 1)] = entries[r].idle ? rank : -rank;
  }
  return pi;
}

KeyArray reference_gamma(std::span<const Key> p) {
  KeyArray gamma(p.size());
  std::iota(gamma.begin(), gamma.end(), Key{1});
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] < 0) gamma[static_cast<std::size_t>(-p[x] - 1)] = -static_cast<Key>(x + 1);
  }
  return gamma;
}

}  // namespace iperm::oracle
