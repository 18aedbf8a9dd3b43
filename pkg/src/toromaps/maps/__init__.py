from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    DerivedMap,
    Role,
    angular_map,
    bipartition,
    build_map,
    canonical_code,
    canonical_form,
    derived_map,
    dual,
    ensure_colors,
    from_cycles,
    iso,
    primal_from_angular,
    unrooted_code,
)
from toromaps.maps.homology import (
    HomologyLabeling,
    Region,
    basis_cycles,
    enclosed_region,
    homology,
    short_contractible_walks,
)
from toromaps.maps.predicates import (
    is_essentially_3connected,
    is_essentially_irreducible,
    is_in_D,
    is_in_H,
    is_in_Q,
    is_in_T,
    is_in_T3,
)
from toromaps.maps.tmap import TmapDocument, read_tmap, write_tmap

__all__ = [
    "Color",
    "CombMap",
    "DerivedMap",
    "HomologyLabeling",
    "Region",
    "Role",
    "TmapDocument",
    "angular_map",
    "basis_cycles",
    "bipartition",
    "build_map",
    "canonical_code",
    "canonical_form",
    "derived_map",
    "dual",
    "enclosed_region",
    "ensure_colors",
    "from_cycles",
    "homology",
    "is_essentially_3connected",
    "is_essentially_irreducible",
    "is_in_D",
    "is_in_H",
    "is_in_Q",
    "is_in_T",
    "is_in_T3",
    "iso",
    "primal_from_angular",
    "read_tmap",
    "short_contractible_walks",
    "unrooted_code",
    "write_tmap",
]
