"""
Class predicates on maps.

Every family has a ``check_*`` function raising the MapError subclass that
names the violated condition, and an ``is_*`` wrapper returning a bool. The
``is_*`` wrappers of toroidal families still raise WrongGenus on maps that
are not toroidal.
"""

from __future__ import annotations

from toromaps.errors import (
    MapError,
    NotBipartite,
    NotInD,
    NotInH,
    NotInQ,
    NotInT,
    NotInT3,
    NotQuadrangulation,
    WrongGenus,
)
from toromaps.maps.combinatorial import CombMap, angular_map, bipartition
from toromaps.maps.homology import (
    canonical_rotation,
    closed_walks,
    facial_walk,
    homology,
    region_on_right,
    short_contractible_walks,
)


def _require_torus(m: CombMap) -> None:
    if m.genus != 1:
        raise WrongGenus(f"expected a toroidal map, got genus {m.genus}")


def _require_bipartite(m: CombMap) -> None:
    if m.colors is None and bipartition(m) is None:
        raise NotBipartite(f"{m!r} has an odd closed walk")


def _wrap(check, m: CombMap, *args) -> bool:
    try:
        check(m, *args)
    except WrongGenus:
        raise
    except MapError:
        return False
    return True


# ===== ESSENTIAL IRREDUCIBILITY =====


def irreducibility_violation(m: CombMap, d: int) -> tuple[int, ...] | None:
    """First contractible closed walk of length <= d that is not a face contour of length d."""
    _require_torus(m)
    for walk, region in short_contractible_walks(m, d, homology(m)):
        if len(walk) < d or not region.is_single_face:
            return walk
    return None


def is_essentially_irreducible(m: CombMap, d: int) -> bool:
    return irreducibility_violation(m, d) is None


def is_essentially_3connected(m: CombMap) -> bool:
    """Essentially 3-connected iff the angular map is essentially irreducible."""
    _require_torus(m)
    return is_essentially_irreducible(angular_map(m), 4)


def check_in_T(m: CombMap) -> None:
    _require_torus(m)
    walk = irreducibility_violation(angular_map(m), 4)
    if walk is not None:
        raise NotInT(f"angular map has a short contractible walk {walk}")


def is_in_T(m: CombMap) -> bool:
    return _wrap(check_in_T, m)


# ===== QUADRANGULATIONS =====


def check_in_Q(q: CombMap) -> None:
    _require_torus(q)
    bad = [len(f) for f in q.faces if len(f) != 4]
    if bad:
        raise NotQuadrangulation(f"faces of degree {bad}")
    _require_bipartite(q)
    walk = irreducibility_violation(q, 4)
    if walk is not None:
        raise NotInQ(f"non-facial contractible walk {walk}")


def is_in_Q(q: CombMap) -> bool:
    return _wrap(check_in_Q, q)


# ===== 6-QUADRANGULAR MAPS =====


def hexagon_face(h: CombMap) -> int:
    """Index of the unique face of degree 6 (raises NotInH otherwise)."""
    hexagons = [i for i, f in enumerate(h.faces) if len(f) == 6]
    if len(hexagons) != 1:
        raise NotInH(f"expected one hexagonal face, found {len(hexagons)}")
    return hexagons[0]


def check_in_H(h: CombMap) -> None:
    """
    Toroidal, bipartite, one hexagonal root face and quadrangles elsewhere,
    essentially irreducible, and no closed walk of length 6 other than the
    root contour enclosing a disk that contains the root face.
    """
    _require_torus(h)
    hexagon = hexagon_face(h)
    others = [len(f) for i, f in enumerate(h.faces) if i != hexagon and len(f) != 4]
    if others:
        raise NotInH(f"non-root faces of degree {others}")
    if h.root is not None and h.face_of[h.root] != hexagon:
        raise NotInH(f"root dart {h.root} is not on the hexagonal face")
    _require_bipartite(h)
    labeling = homology(h)
    contour = canonical_rotation(h.faces[hexagon])
    for walk, region in short_contractible_walks(h, 6, labeling):
        if len(walk) <= 4 and (len(walk) < 4 or not region.is_single_face):
            raise NotInH(f"non-facial contractible walk {walk}")
        if len(walk) == 6 and walk != contour and hexagon in region.faces:
            raise NotInH(f"walk {walk} encloses the root face")


def is_in_H(h: CombMap) -> bool:
    return _wrap(check_in_H, h)


# ===== TRIANGULATIONS =====


def check_in_T3(t: CombMap) -> None:
    """Face-rooted essentially simple toroidal triangulation with no other 3-walk around the root face."""
    _require_torus(t)
    if t.root is None:
        raise NotInT3("triangulation must be face-rooted")
    if any(len(f) != 3 for f in t.faces):
        raise NotInT3("not a triangulation")
    labeling = homology(t)
    root_face = t.face_of[t.root]
    contour = canonical_rotation(facial_walk(t, t.root))
    for walk, region in short_contractible_walks(t, 3, labeling):
        if len(walk) < 3:
            raise NotInT3(f"contractible walk {walk} of length {len(walk)}")
        if walk != contour and root_face in region.faces:
            raise NotInT3(f"walk {walk} encloses the root face")


def is_in_T3(t: CombMap) -> bool:
    return _wrap(check_in_T3, t)


# ===== PLANAR PIECES =====


def check_in_D(d: CombMap) -> None:
    """
    Planar bipartite irreducible 6-quadrangular map rooted at an edge not
    incident to the hexagonal face.
    """
    if d.genus != 0:
        raise WrongGenus(f"expected a planar map, got genus {d.genus}")
    hexagons = [i for i, f in enumerate(d.faces) if len(f) == 6]
    if len(hexagons) != 1 or any(len(f) not in (4, 6) for f in d.faces):
        raise NotInD("faces must be quadrangles plus one hexagon")
    _require_bipartite(d)
    hexagon = hexagons[0]
    if d.root is None or hexagon in (d.face_of[d.root], d.face_of[d.alpha[d.root]]):
        raise NotInD("root edge must not be incident to the hexagonal face")
    for walk in closed_walks(d, 4):
        if len({d.tail(x) for x in walk}) != len(walk):
            continue
        # (x, alpha(x)) goes back along its own edge
        if len({d.edge_of[x] for x in walk}) != len(walk):
            continue
        if len(walk) == 2:
            raise NotInD(f"double edge {walk}")
        sides = [region_on_right(d, walk), region_on_right(d, [d.alpha[x] for x in reversed(walk)])]
        if not any(r is not None and r.is_single_face for r in sides):
            raise NotInD(f"separating 4-cycle {walk}")


def is_in_D(d: CombMap) -> bool:
    try:
        check_in_D(d)
    except MapError:
        return False
    return True
