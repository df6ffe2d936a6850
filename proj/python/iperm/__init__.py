"""In-place linear-time transforms between maps, idempotent maps and
idempotent permutations, and the O(n) sorts built from them.

All arrays are 1-based value lists; fixed elements of idempotent
permutations are tagged by a negative sign.
"""

from ._core import (
    IpermError,
    apply_forward,
    apply_inverse,
    associative_permute,
    check_state,
    count,
    count_table,
    decompose,
    enumerate_idempotent_maps,
    enumerate_idempotent_perms,
    fill_forward,
    invert,
    is_canonical_idempotent_perm,
    map_from_inverse,
    map_to_perm,
    map_to_perm_quadratic,
    multiset_stream,
    perm_to_map,
    sort,
    sort_keyed,
    stable_rank_permutation,
    to_idempotent,
)

__all__ = [
    "IpermError",
    "apply_forward",
    "apply_inverse",
    "associative_permute",
    "check_state",
    "count",
    "count_table",
    "decompose",
    "enumerate_idempotent_maps",
    "enumerate_idempotent_perms",
    "fill_forward",
    "invert",
    "is_canonical_idempotent_perm",
    "map_from_inverse",
    "map_to_perm",
    "map_to_perm_quadratic",
    "multiset_stream",
    "perm_to_map",
    "sort",
    "sort_keyed",
    "stable_rank_permutation",
    "to_idempotent",
]
