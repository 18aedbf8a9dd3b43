"""
Hexagon decomposition of rooted toroidal maps.

A corner-rooted member of the essentially 3-connected class is the same as
its angular quadrangulation with a marked edge. The maximal contractible
hexagon enclosing the marked edge splits that quadrangulation into a
6-quadrangular toroidal map rooted at a white hexagon corner and a planar
6-quadrangular disk rooted at an inner edge; patching is the inverse.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from toromaps.bijection import add_dummy
from toromaps.core.logging import logger
from toromaps.errors import AlgorithmError, MapError, NotInH, NotInT3, NotPatchable
from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    angular_map,
    canonical_code,
    ensure_colors,
    primal_from_angular,
    remove_edges,
)
from toromaps.maps.homology import Region, closed_walks, homology, region_on_right
from toromaps.maps.predicates import check_in_H, check_in_Q, check_in_T, check_in_T3, hexagon_face

# ===== MARKED QUADRANGULATIONS =====


@dataclass(frozen=True)
class MarkedQuadrangulation:
    q: CombMap
    marked: int

    @property
    def marked_edge(self) -> int:
        return self.q.edge_of[self.marked]


def corner_edge_correspondence(m: CombMap, corner: int) -> MarkedQuadrangulation:
    """
    The angular map of m with the edge of the corner ending at ``corner``
    marked (the white dart of that edge has the same number).

    Raises:
        NotInT: m is not essentially 3-connected
    """
    check_in_T(m)
    q = angular_map(m).with_root(corner)
    return MarkedQuadrangulation(q=q, marked=corner)


def edge_corner_correspondence(qm: MarkedQuadrangulation) -> tuple[CombMap, int]:
    """Inverse of corner_edge_correspondence: (m rooted at the corner, corner dart)."""
    q = ensure_colors(qm.q)
    white = [d for d in q.darts if q.colors[d] is Color.WHITE]
    w = qm.marked if q.colors[qm.marked] is Color.WHITE else q.alpha[qm.marked]
    corner = white.index(w) + 1
    m = primal_from_angular(q.with_root(w)).with_root(corner)
    return m, corner


# ===== ENCLOSING HEXAGONS =====


def boundary_length(m: CombMap, faces: Iterable[int]) -> int:
    """Number of face sides of the face set whose other side lies outside it."""
    inside = set(faces)
    return sum(1 for d in m.darts if m.face_of[d] in inside and m.face_of[m.alpha[d]] not in inside)


def enclosing_hexagons(qm: MarkedQuadrangulation) -> list[tuple[tuple[int, ...], Region]]:
    """Closed walks of length 6 bounding a disk whose interior contains the marked edge."""
    q = qm.q
    labeling = homology(q)
    result = []
    for walk in closed_walks(q, 6):
        if len(walk) != 6 or labeling.walk_label(walk) != (0, 0):
            continue
        region = region_on_right(q, walk)
        if region is None or region.euler_characteristic != 1:
            continue
        if region.contains_edge(qm.marked_edge):
            result.append((walk, region))
    return result


def maximal_enclosing_hexagon(qm: MarkedQuadrangulation) -> tuple[tuple[int, ...], Region]:
    """
    The enclosing hexagon whose region contains every other one.

    Raises:
        AlgorithmError: no enclosing hexagon, or no unique maximal one
    """
    candidates = enclosing_hexagons(qm)
    if not candidates:
        raise AlgorithmError(f"no hexagon encloses edge {qm.marked_edge}")
    best = max(candidates, key=lambda c: len(c[1].faces))
    if any(not region.faces <= best[1].faces for _, region in candidates):
        raise AlgorithmError(f"enclosing hexagons of edge {qm.marked_edge} have no unique maximum")
    return best


# ===== SPLIT AND PATCH =====


@dataclass(frozen=True)
class HexagonSplit:
    """
    h_prime is rooted at the hexagon dart leaving the marked white corner;
    d_prime is rooted at the copy of the marked edge.
    """

    h_prime: CombMap
    d_prime: CombMap


def _inner_walk(d: CombMap) -> tuple[int, ...]:
    """Closed walk around the hexagon of a planar piece with the quadrangles on its right."""
    contour = d.faces[hexagon_face_planar(d)]
    return tuple(d.alpha[c] for c in reversed(contour))


def hexagon_face_planar(d: CombMap) -> int:
    hexagons = [i for i, f in enumerate(d.faces) if len(f) == 6]
    if len(hexagons) != 1:
        raise NotPatchable(f"expected one hexagonal face, found {len(hexagons)}")
    return hexagons[0]


def v_of_D(d: CombMap) -> int:
    """
    First white vertex of the hexagonal face met by a depth-first traversal
    from the root vertex, visiting neighbours counterclockwise starting
    after the dart of arrival (from the root dart at the root vertex).
    """
    d = ensure_colors(d)
    hexagon = hexagon_face_planar(d)
    on_hexagon = {d.tail(x) for x in d.faces[hexagon]}
    seen = set()
    stack = [d.root]
    while stack:
        entry = stack.pop()
        v = d.tail(entry)
        if v in seen:
            continue
        seen.add(v)
        if v in on_hexagon and d.color_of_vertex(v) is Color.WHITE:
            return v
        rotation = []
        x = entry
        while True:
            rotation.append(x)
            x = d.sigma[x]
            if x == entry:
                break
        for x in reversed(rotation):
            stack.append(d.alpha[x])
    raise AlgorithmError("hexagonal face has no white vertex")


def split(qm: MarkedQuadrangulation) -> HexagonSplit:
    """Empty the maximal enclosing hexagon into a planar piece."""
    q = ensure_colors(qm.q)
    walk, region = maximal_enclosing_hexagon(MarkedQuadrangulation(q, qm.marked))
    inner = sorted(x for x in q.darts if q.edge_of[x] in region.edges)

    label = {x: i + 1 for i, x in enumerate(inner)}
    k = len(inner)
    fwd = [k + 1 + i for i in range(6)]
    back = [k + 7 + i for i in range(6)]
    n = k + 12
    alpha = [0] * (n + 1)
    sigma = [0] * (n + 1)
    colors: list[Color | None] = [None] * (n + 1)
    for x in inner:
        alpha[label[x]] = label[q.alpha[x]]
        colors[label[x]] = q.colors[x]
    for i, w in enumerate(walk):
        alpha[fwd[i]], alpha[back[i]] = back[i], fwd[i]
        colors[fwd[i]] = q.colors[w]
        colors[back[i]] = q.colors[q.alpha[w]]
    for x in inner:
        y = q.sigma[x]
        if y in label:
            sigma[label[x]] = label[y]
    for i, w in enumerate(walk):
        sector = []
        x = q.sigma[q.alpha[walk[i - 1]]]
        while x != w:
            sector.append(label[x])
            x = q.sigma[x]
        ring = [back[i - 1]] + sector + [fwd[i]]
        for a, b in zip(ring, ring[1:] + ring[:1]):
            sigma[a] = b
    d_prime = CombMap(alpha=tuple(alpha), sigma=tuple(sigma), root=label[qm.marked], colors=tuple(colors))

    v = v_of_D(d_prime)
    position = next(i for i in range(6) if d_prime.tail(fwd[i]) == v)
    h, _ = remove_edges(q, inner, root=walk[position])
    logger.debug(f"split off {len(region.faces)} faces behind hexagon {walk}")
    return HexagonSplit(h_prime=h, d_prime=d_prime)


def patch(h_prime: CombMap, d_prime: CombMap) -> MarkedQuadrangulation:
    """
    Glue d_prime into the hexagon of h_prime, its white vertex v(D) onto
    the root corner of h_prime.

    Raises:
        NotPatchable: the glued map is not an irreducible bipartite quadrangulation
    """
    h = ensure_colors(h_prime)
    d = ensure_colors(d_prime)
    hexagon = hexagon_face(h)
    r = h.root
    if r is None or h.face_of[r] != hexagon or h.colors[r] is not Color.WHITE:
        raise NotPatchable("h_prime must be rooted at a white corner of its hexagon")
    h_walk = [r]
    while len(h_walk) < 6:
        h_walk.append(h.phi[h_walk[-1]])

    inner = _inner_walk(d)
    v = v_of_D(d)
    j = next(i for i in range(6) if d.tail(inner[i]) == v)
    d_walk = inner[j:] + inner[:j]
    boundary = set(d_walk) | {d.alpha[x] for x in d_walk}
    interior = [x for x in d.darts if x not in boundary]

    n_h = h.n_darts
    label = {x: n_h + 1 + i for i, x in enumerate(interior)}
    n = n_h + len(interior)
    alpha = list(h.alpha) + [0] * len(interior)
    sigma = list(h.sigma) + [0] * len(interior)
    colors = list(h.colors) + [None] * len(interior)
    for x in interior:
        alpha[label[x]] = label[d.alpha[x]]
        colors[label[x]] = d.colors[x]
        y = d.sigma[x]
        if y in label:
            sigma[label[x]] = label[y]
    for i in range(6):
        sector = []
        x = d.sigma[d.alpha[d_walk[i - 1]]]
        while x != d_walk[i]:
            sector.append(label[x])
            x = d.sigma[x]
        chain = [h.alpha[h_walk[i - 1]]] + sector + [h_walk[i]]
        for a, b in zip(chain, chain[1:]):
            sigma[a] = b

    if d.root not in label:
        raise NotPatchable("d_prime must be rooted at an edge away from its hexagon")
    try:
        q = CombMap(alpha=tuple(alpha), sigma=tuple(sigma), root=label[d.root], colors=tuple(colors))
        check_in_Q(q)
    except MapError as exc:
        raise NotPatchable(f"patched map is invalid: {exc}") from exc
    return MarkedQuadrangulation(q=q, marked=q.root)


def vertex_bookkeeping(qm: MarkedQuadrangulation, s: HexagonSplit) -> bool:
    """Per color, vertices of h_prime plus vertices of d_prime equal three plus vertices of q."""
    q = ensure_colors(qm.q).count_colors()
    h = ensure_colors(s.h_prime).count_colors()
    d = ensure_colors(s.d_prime).count_colors()
    return all(h[c] + d[c] == q[c] + 3 for c in Color)


# ===== TRIANGULATIONS =====


def iota(t: CombMap) -> CombMap:
    """
    Delete the black vertex of the root face from the angular map of a
    face-rooted triangulation.

    Raises:
        NotInT3: t is not in the face-rooted triangulation class
    """
    check_in_T3(t)
    q = angular_map(t)
    n = t.n_darts
    root_face = t.faces[t.face_of[t.root]]
    h, _ = remove_edges(q, [n + d for d in root_face], root=t.sigma[t.root])
    return h


def iota_inverse(h: CombMap) -> CombMap:
    """
    Raises:
        NotInH: h is not a 6-quadrangular member with black vertices of degree 3
    """
    h = ensure_colors(h)
    check_in_H(h)
    if any(h.degree(v) != 3 for v in range(h.n_vertices) if h.color_of_vertex(v) is Color.BLACK):
        raise NotInH("black vertices must all have degree 3")
    t = primal_from_angular(add_dummy(h).q)
    try:
        check_in_T3(t)
    except MapError as exc:
        raise NotInT3(f"inverse image is not a face-rooted triangulation: {exc}") from exc
    return t


# ===== ENUMERATION THROUGH SPLITTING =====


def hexagonal_maps_from_quadrangulations(quadrangulations: Iterable[CombMap]) -> list[CombMap]:
    """
    Distinct corner-rooted 6-quadrangular maps obtained by splitting every
    edge-marking of the given quadrangulations.
    """
    seen: dict[tuple, CombMap] = {}
    for q in quadrangulations:
        q = ensure_colors(q)
        for a, _ in q.edges:
            h = split(MarkedQuadrangulation(q, a)).h_prime
            code = canonical_code(h)
            if code not in seen:
                seen[code] = h
    return list(seen.values())
