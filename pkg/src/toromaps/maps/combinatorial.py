"""
Dart-based combinatorial maps.

A map on n darts (1..n) is a pair of permutations: the edge involution
``alpha`` and the counterclockwise rotation ``sigma``. Faces are the orbits
of ``phi = sigma o alpha`` (alpha applied first); walking the darts of a
face orbit keeps the face on the right. Permutations are stored as tuples
whose index 0 is unused, so ``m.sigma[d]`` is the image of dart d.

Pure deterministic logic, no side effects.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property

from toromaps.errors import (
    BadColoring,
    InvalidRoot,
    NotBipartite,
    NotConnected,
    NotInvolution,
    NotPermutation,
    NotQuadrangulation,
    WrongGenus,
)


class Color(str, Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def other(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


class Role(str, Enum):
    """Vertex kinds of a derived map."""

    PRIMAL = "primal"
    DUAL = "dual"
    EDGE = "edge"


Perm = tuple[int, ...]


def _as_perm(n: int, images: Mapping[int, int] | Sequence[int], name: str) -> Perm:
    if isinstance(images, Mapping):
        perm = (0,) + tuple(images.get(d, d) for d in range(1, n + 1))
    else:
        if len(images) == n + 1 and images[0] == 0:
            perm = tuple(images)
        elif len(images) == n:
            perm = (0,) + tuple(images)
        else:
            raise NotPermutation(f"{name} has {len(images)} images for {n} darts")
    if sorted(perm[1:]) != list(range(1, n + 1)):
        raise NotPermutation(f"{name} is not a permutation of 1..{n}: {perm[1:]}")
    return perm


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation tuple from cycle notation (unlisted darts are fixed)."""
    images = list(range(n + 1))
    for cycle in cycles:
        for i, d in enumerate(cycle):
            images[d] = cycle[(i + 1) % len(cycle)]
    return tuple(images)


def orbits(perm: Perm) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its smallest dart, sorted."""
    seen = [False] * len(perm)
    result = []
    for start in range(1, len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        result.append(tuple(cycle))
    return result


def invert(perm: Perm) -> Perm:
    inv = [0] * len(perm)
    for d in range(1, len(perm)):
        inv[perm[d]] = d
    return tuple(inv)


@dataclass(frozen=True, eq=False)
class CombMap:
    """
    Immutable, validated combinatorial map.

    ``colors`` (optional) gives the color of the vertex of each dart, so two
    darts of the same vertex always carry the same color.
    """

    alpha: Perm
    sigma: Perm
    root: int | None = None
    colors: tuple[Color | None, ...] | None = field(default=None)

    def __post_init__(self):
        n = len(self.alpha) - 1
        if n <= 0 or n % 2:
            raise NotInvolution(f"dart count must be even and positive, got {n}")
        if len(self.sigma) != n + 1 or sorted(self.sigma[1:]) != list(range(1, n + 1)):
            raise NotPermutation("sigma is not a permutation on the dart set")
        for d in range(1, n + 1):
            a = self.alpha[d]
            if not 1 <= a <= n or a == d or self.alpha[a] != d:
                raise NotInvolution(f"alpha is not a fixed-point-free involution at dart {d}")
        if self.root is not None and not 1 <= self.root <= n:
            raise InvalidRoot(f"root dart {self.root} outside 1..{n}")
        # Transitivity of <sigma, alpha>
        seen = {1}
        queue = deque([1])
        while queue:
            d = queue.popleft()
            for e in (self.sigma[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    queue.append(e)
        if len(seen) != n:
            raise NotConnected(f"only {len(seen)} of {n} darts reachable from dart 1")
        if self.colors is not None:
            if len(self.colors) != n + 1:
                raise BadColoring("colors must list one entry per dart")
            for d in range(1, n + 1):
                if self.colors[self.sigma[d]] != self.colors[d]:
                    raise BadColoring(f"darts {d} and {self.sigma[d]} share a vertex but differ in color")
                if self.colors[d] is None or self.colors[d] == self.colors[self.alpha[d]]:
                    raise BadColoring(f"edge of dart {d} is not black-white")

    # ----- sizes and cells -----

    @property
    def n_darts(self) -> int:
        return len(self.alpha) - 1

    @property
    def darts(self) -> range:
        return range(1, self.n_darts + 1)

    @cached_property
    def phi(self) -> Perm:
        return (0,) + tuple(self.sigma[self.alpha[d]] for d in self.darts)

    @cached_property
    def sigma_inv(self) -> Perm:
        return invert(self.sigma)

    @cached_property
    def phi_inv(self) -> Perm:
        return invert(self.phi)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return orbits(self.sigma)

    @cached_property
    def edges(self) -> list[tuple[int, ...]]:
        return orbits(self.alpha)

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return orbits(self.phi)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return _index(self.vertices, self.n_darts)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        """Index of the face on the right of each dart."""
        return _index(self.faces, self.n_darts)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        return _index(self.edges, self.n_darts)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return self.n_darts // 2

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def genus(self) -> int:
        chi = self.n_vertices - self.n_edges + self.n_faces
        return (2 - chi) // 2

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def color_of_vertex(self, v: int) -> Color | None:
        if self.colors is None:
            return None
        return self.colors[self.vertices[v][0]]

    def count_colors(self) -> dict[Color, int]:
        counts = {Color.BLACK: 0, Color.WHITE: 0}
        for v in range(self.n_vertices):
            color = self.color_of_vertex(v)
            if color is not None:
                counts[color] += 1
        return counts

    @property
    def root_face(self) -> int | None:
        return None if self.root is None else self.face_of[self.root]

    # ----- derived copies -----

    def with_root(self, root: int | None) -> "CombMap":
        return replace(self, root=root)

    def with_colors(self, colors: tuple[Color | None, ...] | None) -> "CombMap":
        return replace(self, colors=colors)

    def relabel(self, perm: Sequence[int]) -> "CombMap":
        """Conjugate by ``perm`` (old dart d becomes perm[d])."""
        n = self.n_darts
        alpha = [0] * (n + 1)
        sigma = [0] * (n + 1)
        colors = None if self.colors is None else [None] * (n + 1)
        for d in self.darts:
            alpha[perm[d]] = perm[self.alpha[d]]
            sigma[perm[d]] = perm[self.sigma[d]]
            if colors is not None:
                colors[perm[d]] = self.colors[d]
        return CombMap(
            alpha=tuple(alpha),
            sigma=tuple(sigma),
            root=None if self.root is None else perm[self.root],
            colors=None if colors is None else tuple(colors),
        )

    def mirror(self) -> "CombMap":
        return replace(self, sigma=self.sigma_inv)

    def __repr__(self) -> str:
        return (
            f"CombMap(v={self.n_vertices}, e={self.n_edges}, f={self.n_faces}, "
            f"g={self.genus}, root={self.root})"
        )


def _index(cycles: list[tuple[int, ...]], n: int) -> tuple[int, ...]:
    index = [0] * (n + 1)
    for i, cycle in enumerate(cycles):
        for d in cycle:
            index[d] = i
    return tuple(index)


# ===== CONSTRUCTION =====


def build_map(
    n_darts: int,
    alpha: Mapping[int, int] | Sequence[int],
    sigma: Mapping[int, int] | Sequence[int],
    root: int | None = None,
    colors: Mapping[int, Color | str] | None = None,
    expected_genus: int | None = None,
) -> CombMap:
    """
    Validate and build a map.

    Args:
        n_darts: Number of darts (even, positive)
        alpha: Edge involution, as a mapping or a 1-based image list
        sigma: Counterclockwise rotation, same encodings as alpha
        root: Optional root dart
        colors: Optional vertex coloring keyed by any dart of the vertex
        expected_genus: When given, raise WrongGenus on mismatch

    Returns:
        The validated CombMap
    """
    if n_darts <= 0 or n_darts % 2:
        raise NotInvolution(f"dart count must be even and positive, got {n_darts}")
    alpha_perm = _as_perm(n_darts, alpha, "alpha")
    sigma_perm = _as_perm(n_darts, sigma, "sigma")
    dart_colors = None
    if colors is not None:
        dart_colors = _expand_colors(n_darts, sigma_perm, colors)
    m = CombMap(alpha=alpha_perm, sigma=sigma_perm, root=root, colors=dart_colors)
    if expected_genus is not None and m.genus != expected_genus:
        raise WrongGenus(f"expected genus {expected_genus}, got {m.genus}")
    return m


def from_cycles(
    n_darts: int,
    alpha: Iterable[Sequence[int]],
    sigma: Iterable[Sequence[int]],
    root: int | None = None,
    colors: Mapping[int, Color | str] | None = None,
) -> CombMap:
    """Build a map from cycle notation, e.g. alpha=[(1, 4), (2, 5), (3, 6)]."""
    return build_map(
        n_darts,
        perm_from_cycles(n_darts, alpha),
        perm_from_cycles(n_darts, sigma),
        root=root,
        colors=colors,
    )


def _expand_colors(n: int, sigma: Perm, colors: Mapping[int, Color | str]) -> tuple[Color | None, ...]:
    per_dart: list[Color | None] = [None] * (n + 1)
    for rep, color in colors.items():
        color = Color(color)
        d = rep
        while True:
            if per_dart[d] is not None and per_dart[d] != color:
                raise BadColoring(f"vertex of dart {rep} listed with two colors")
            per_dart[d] = color
            d = sigma[d]
            if d == rep:
                break
    if any(c is None for c in per_dart[1:]):
        raise BadColoring("colors must cover every vertex")
    return tuple(per_dart)


# ===== BIPARTITION =====


def bipartition(m: CombMap, start_color: Color = Color.WHITE) -> tuple[Color, ...] | None:
    """
    Two-color the vertices, or return None if an odd closed walk exists.

    The vertex of the root dart (dart 1 if unrooted) receives ``start_color``.
    The result is a per-dart color tuple usable as ``CombMap.colors``.
    """
    vertex_color: dict[int, Color] = {}
    start = m.tail(m.root or 1)
    vertex_color[start] = start_color
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for d in m.vertices[v]:
            w = m.head(d)
            expected = vertex_color[v].other
            if w not in vertex_color:
                vertex_color[w] = expected
                queue.append(w)
            elif vertex_color[w] != expected:
                return None
    return (None,) + tuple(vertex_color[m.tail(d)] for d in m.darts)


def ensure_colors(m: CombMap, start_color: Color = Color.WHITE) -> CombMap:
    """Return m with colors, computing a bipartition if none is attached."""
    if m.colors is not None:
        return m
    colors = bipartition(m, start_color)
    if colors is None:
        raise NotBipartite(f"{m!r} has an odd closed walk")
    return m.with_colors(colors)


# ===== DUALITY AND ANGULAR CONSTRUCTIONS =====


def dual(m: CombMap) -> CombMap:
    """
    Dual map on the same darts: dart d of the dual crosses the edge of d and
    starts at the face on the right of d, so sigma* = phi^-1 and alpha* = alpha.
    """
    return CombMap(alpha=m.alpha, sigma=m.phi_inv, root=m.root)


def angular_map(m: CombMap) -> CombMap:
    """
    Angular map: dart d of m gives the white dart d (at the vertex of d) and
    the black dart n+d (at the face on the right of d), joined by an edge
    that represents the corner between sigma^-1(d) and d.
    """
    n = m.n_darts
    alpha = [0] * (2 * n + 1)
    sigma = [0] * (2 * n + 1)
    for d in m.darts:
        alpha[d] = n + d
        alpha[n + d] = d
        sigma[d] = m.sigma[d]
        sigma[n + d] = n + m.phi_inv[d]
    colors = (None,) + (Color.WHITE,) * n + (Color.BLACK,) * n
    return CombMap(alpha=tuple(alpha), sigma=tuple(sigma), root=m.root, colors=colors)


def primal_from_angular(q: CombMap) -> CombMap:
    """
    Inverse of angular_map: the map whose vertices are the white vertices
    of q and whose edges join the two white corners of each face of q.

    White darts keep their relative order and are renumbered 1..k; the root
    becomes the white dart of the root edge.
    """
    if any(len(face) != 4 for face in q.faces):
        raise NotQuadrangulation(f"{q!r} has a face of degree other than 4")
    q = ensure_colors(q)
    white = [d for d in q.darts if q.colors[d] is Color.WHITE]
    label = {d: i + 1 for i, d in enumerate(white)}
    k = len(white)
    alpha = [0] * (k + 1)
    sigma = [0] * (k + 1)
    for y in white:
        sigma[label[y]] = label[q.sigma[y]]
        opposite = q.phi[q.phi[q.sigma[y]]]
        alpha[label[y]] = label[q.sigma_inv[opposite]]
    root = None
    if q.root is not None:
        r = q.root if q.colors[q.root] is Color.WHITE else q.alpha[q.root]
        root = label[r]
    return CombMap(alpha=tuple(alpha), sigma=tuple(sigma), root=root)


@dataclass(frozen=True)
class DerivedMap:
    """Derived map with the role (primal, dual, edge) of each dart's vertex."""

    carrier: CombMap
    roles: tuple[Role | None, ...]

    def role_of_vertex(self, v: int) -> Role:
        return self.roles[self.carrier.vertices[v][0]]


def derived_roles(q: CombMap) -> tuple[Role | None, ...]:
    """Roles of the angular map of a colored quadrangulation q (white = primal)."""
    n = q.n_darts
    roles: list[Role | None] = [None] * (2 * n + 1)
    for d in q.darts:
        roles[d] = Role.PRIMAL if q.colors[d] is Color.WHITE else Role.DUAL
        roles[n + d] = Role.EDGE
    return tuple(roles)


def derived_map(m: CombMap) -> DerivedMap:
    """Superimposition of m and its dual, built as the angular map of the angular map."""
    q = angular_map(m)
    return DerivedMap(carrier=angular_map(q), roles=derived_roles(q))


# ===== CANONICAL FORMS AND ISOMORPHISM =====


def canonical_labeling(m: CombMap, root: int) -> list[int]:
    """
    Relabeling by discovery order of a traversal from ``root``: darts are
    processed in label order, looking at sigma(d) then alpha(d).
    """
    label = [0] * (m.n_darts + 1)
    order = [root]
    label[root] = 1
    i = 0
    while i < len(order):
        d = order[i]
        for e in (m.sigma[d], m.alpha[d]):
            if not label[e]:
                order.append(e)
                label[e] = len(order)
        i += 1
    return label


def canonical_code(m: CombMap, root: int | None = None) -> tuple:
    """Code of the rooted map (m, root); equal codes iff rooted-isomorphic."""
    root = m.root if root is None else root
    if root is None:
        raise ValueError("canonical_code needs a root dart")
    label = canonical_labeling(m, root)
    n = m.n_darts
    sigma = [0] * n
    alpha = [0] * n
    colors = [None] * n if m.colors is not None else None
    for d in m.darts:
        sigma[label[d] - 1] = label[m.sigma[d]]
        alpha[label[d] - 1] = label[m.alpha[d]]
        if colors is not None:
            colors[label[d] - 1] = m.colors[d].value
    return (tuple(sigma), tuple(alpha), None if colors is None else tuple(colors))


def canonical_form(m: CombMap, root: int | None = None) -> CombMap:
    """Relabel m so that its root is dart 1 and darts follow discovery order."""
    root = m.root if root is None else root
    label = canonical_labeling(m, root)
    return m.with_root(root).relabel(label)


def unrooted_code(m: CombMap) -> tuple:
    return min(canonical_code(m, d) for d in m.darts)


def iso(m1: CombMap, m2: CombMap, rooted: bool = True) -> bool:
    """
    Isomorphism test by canonical relabeling.

    rooted: a dart bijection commuting with sigma and alpha sends root to
    root (maps without a root use dart 1); unrooted: any root of m2 works.
    Colors take part in the comparison only when both maps carry them.
    """
    if m1.n_darts != m2.n_darts:
        return False
    if (m1.n_vertices, m1.n_faces) != (m2.n_vertices, m2.n_faces):
        return False
    width = 3 if m1.colors is not None and m2.colors is not None else 2
    code1 = canonical_code(m1, m1.root or 1)[:width]
    if rooted:
        return code1 == canonical_code(m2, m2.root or 1)[:width]
    return any(code1 == canonical_code(m2, d)[:width] for d in m2.darts)


def automorphism_count(m: CombMap) -> int:
    """Number of orientation-preserving automorphisms (color-preserving when colored)."""
    code = canonical_code(m, 1)
    return sum(1 for d in m.darts if canonical_code(m, d) == code)


# ===== EDITING =====


def remove_edges(m: CombMap, darts: Iterable[int], root: int | None = None) -> tuple[CombMap, dict[int, int]]:
    """
    Delete the edges of the given darts and renumber the remaining darts
    1..k in their original order.

    Returns:
        (map, old-to-new dart mapping)
    """
    doomed = set()
    for d in darts:
        doomed.add(d)
        doomed.add(m.alpha[d])
    keep = [d for d in m.darts if d not in doomed]
    label = {d: i + 1 for i, d in enumerate(keep)}
    k = len(keep)
    alpha = [0] * (k + 1)
    sigma = [0] * (k + 1)
    colors = None if m.colors is None else [None] * (k + 1)
    for d in keep:
        nxt = m.sigma[d]
        while nxt in doomed:
            nxt = m.sigma[nxt]
        sigma[label[d]] = label[nxt]
        alpha[label[d]] = label[m.alpha[d]]
        if colors is not None:
            colors[label[d]] = m.colors[d]
    if root is None and m.root is not None and m.root in label:
        root = m.root
    new_root = None if root is None else label[root]
    result = CombMap(
        alpha=tuple(alpha),
        sigma=tuple(sigma),
        root=new_root,
        colors=None if colors is None else tuple(colors),
    )
    return result, label


def detach_darts(m: CombMap, darts: Iterable[int]) -> CombMap:
    """
    Detach half-edges: each listed dart leaves its vertex and becomes the
    only dart of a new degree-1 vertex (an edge with a deleted ingoing
    half-edge turns into a pending edge). Dart numbers are unchanged.
    """
    detached = set(darts)
    sigma = list(m.sigma)
    for d in m.darts:
        if d in detached:
            sigma[d] = d
            continue
        nxt = m.sigma[d]
        while nxt in detached:
            nxt = m.sigma[nxt]
        sigma[d] = nxt
    return replace(m, sigma=tuple(sigma))
