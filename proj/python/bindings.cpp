#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iperm/core_model.hpp"
#include "iperm/oracle.hpp"
#include "iperm/sorting.hpp"
#include "iperm/transforms.hpp"

namespace py = pybind11;
using namespace iperm;

namespace {

SemanticState state_of(const std::string& name) {
  auto s = parse_state(name);
  if (!s) throw Error(Errc::InvalidState, "unknown state '" + name + "'");
  return *s;
}

void require(std::span<const Key> a, SemanticState state) {
  check_length(a.size());
  if (auto v = check_state(a, state); !v) {
    throw Error(Errc::InvalidState, std::string(to_string(state)) + ": " + v.reason);
  }
}

// Each binding copies its argument, validates, transforms the copy in place
// and returns it.
template <class F>
auto in_place(SemanticState pre, F op) {
  return [pre, op](KeyArray a) {
    require(a, pre);
    op(std::span<Key>(a));
    return a;
  };
}

py::int_ to_py(const oracle::BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

oracle::Family family_of(const std::string& name) {
  if (name == "idempotent") return oracle::Family::Idempotent;
  if (name == "multiset") return oracle::Family::Multiset;
  throw Error(Errc::InvalidState, "unknown family '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Idempotent permutation transforms and O(n) sorting";

  static py::exception<Error> error(m, "IpermError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  using S = SemanticState;

  m.def(
      "check_state",
      [](const KeyArray& a, const std::string& state) {
        auto v = check_state(a, state_of(state));
        return py::make_tuple(v.ok, v.reason);
      },
      py::arg("values"), py::arg("state"),
      "Returns (ok, reason); reason names the first violated condition.");
  m.def(
      "is_canonical_idempotent_perm",
      [](const KeyArray& a) { return is_canonical_idempotent_perm(a); }, py::arg("values"));
  m.def(
      "decompose",
      [](const KeyArray& a, const std::string& state) {
        auto d = decompose(a, state_of(state));
        py::dict out;
        out["k"] = d.degree;
        out["A"] = d.fixed_indices;
        out["C"] = d.boundaries;
        out["c'"] = d.cardinalities;
        return out;
      },
      py::arg("values"), py::arg("state"));

  m.def("to_idempotent", in_place(S::RawMap, [](auto a) { to_idempotent_unstable(a); }),
        py::arg("values"), "Unstable rearrangement of a map into an idempotent map.");
  m.def(
      "stable_rank_permutation",
      [](const KeyArray& f) {
        require(f, S::RawMap);
        RankPermutation sigma(f.size());
        stable_rank_permutation(f, sigma);
        return sigma.values();
      },
      py::arg("values"));
  m.def(
      "apply_forward",
      [](KeyArray a, const KeyArray& sigma) {
        if (a.size() != sigma.size()) throw Error(Errc::LengthMismatch, "lengths differ");
        auto s = RankPermutation::from_values(sigma);
        apply_forward(a, s);
        return a;
      },
      py::arg("values"), py::arg("sigma"), "a(i) <- a(sigma(i)).");
  m.def(
      "apply_inverse",
      [](KeyArray a, const KeyArray& sigma) {
        if (a.size() != sigma.size()) throw Error(Errc::LengthMismatch, "lengths differ");
        auto s = RankPermutation::from_values(sigma);
        apply_inverse(a, s);
        return a;
      },
      py::arg("values"), py::arg("sigma"), "a(sigma(i)) <- a(i).");
  m.def(
      "invert",
      [](KeyArray a) {
        check_length(a.size());
        if (check_rank_perm(a)) {
          invert_inplace(a, InvertMode::SignTag);
          return a;
        }
        if (!validate_idempotent_perm(a) && !validate_inverse_idempotent_perm(a)) {
          throw Error(Errc::InvalidState, "not a permutation or idempotent permutation");
        }
        BitScratch scratch(a.size());
        invert_inplace(a, InvertMode::BitTag, &scratch);
        return a;
      },
      py::arg("values"));
  m.def("map_to_perm", in_place(S::IdempotentMap, [](auto a) { map_to_perm(a); }),
        py::arg("values"));
  m.def("map_to_perm_quadratic",
        in_place(S::IdempotentMap, [](auto a) { map_to_perm_quadratic(a); }), py::arg("values"));
  m.def("perm_to_map", in_place(S::IdempotentPerm, [](auto a) { perm_to_map_quadratic(a); }),
        py::arg("values"));
  m.def(
      "map_from_inverse",
      [](const KeyArray& a) {
        require(a, S::InverseIdempotentPerm);
        KeyArray out(a.size());
        map_from_inverse(a, out);
        return out;
      },
      py::arg("values"));
  m.def(
      "fill_forward",
      [](KeyArray a) {
        check_length(a.size());
        if (!validate_inverse_idempotent_perm(a) && !check_gamma(a)) {
          throw Error(Errc::InvalidState, "expected an inverse idempotent permutation or gamma");
        }
        fill_forward_inplace(a);
        return a;
      },
      py::arg("values"));
  m.def(
      "multiset_stream",
      [](const KeyArray& a) {
        require(a, S::InverseIdempotentPerm);
        KeyArray out;
        out.reserve(a.size());
        multiset_stream(ConstSpanView(a), [&](Key v) { out.push_back(v); });
        return out;
      },
      py::arg("values"));
  m.def("associative_permute",
        in_place(S::IdempotentPerm, [](auto a) { associative_permute(a); }), py::arg("values"));

  m.def(
      "sort",
      [](KeyArray keys, const std::string& algorithm) {
        auto algo = parse_sort_algorithm(algorithm);
        if (!algo) throw Error(Errc::InvalidState, "unknown algorithm '" + algorithm + "'");
        SortRequest request{std::move(keys), *algo, std::nullopt};
        if (*algo != SortAlgorithm::UnstableInPlace) request.aux = KeyArray(request.keys.size());
        run(request);
        return request.keys;
      },
      py::arg("keys"), py::arg("algorithm") = "unstable",
      "Sorts keys in [1, n]; algorithm is unstable, stable-aux or stable-preserving.");
  m.def(
      "sort_keyed",
      [](KeyArray keys, KeyArray satellites) {
        KeyArray aux(keys.size());
        sort_stable_preserving_keyed(keys, satellites, aux);
        return py::make_tuple(keys, satellites);
      },
      py::arg("keys"), py::arg("satellites"),
      "Stable sort carrying one integer satellite per key.");

  m.def(
      "count",
      [](std::size_t n, std::optional<std::size_t> k, const std::string& family) {
        auto fam = family_of(family);
        if (k) {
          return to_py(fam == oracle::Family::Idempotent ? oracle::cardinality_idempotent(n, *k)
                                                         : oracle::cardinality_multiset(n, *k));
        }
        return to_py(oracle::formula_table(n, fam).total);
      },
      py::arg("n"), py::arg("k") = py::none(), py::arg("family") = "idempotent");
  m.def(
      "count_table",
      [](std::size_t n, const std::string& family, bool enumerate) {
        auto fam = family_of(family);
        auto t = enumerate ? oracle::enumeration_table(n, fam) : oracle::formula_table(n, fam);
        py::list rows;
        for (const auto& c : t.per_degree) rows.append(to_py(c));
        return rows;
      },
      py::arg("n"), py::arg("family") = "idempotent", py::arg("enumerate") = false,
      "Per-degree counts, index k-1 for degree k.");
  m.def("enumerate_idempotent_maps", &oracle::enumerate_idempotent_maps, py::arg("n"));
  m.def("enumerate_idempotent_perms", &oracle::enumerate_idempotent_perms, py::arg("n"));
}
