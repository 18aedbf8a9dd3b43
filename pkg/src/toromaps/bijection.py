"""
Closure bijection between balanced precubic bipartite unicellular toroidal
maps and toroidal 6-quadrangular maps, and its inverse through canonical
biorientations.

Closing never renumbers darts: a leaf's dart is spliced into the rotation
of an existing vertex, so the closed map, the biorientation it inherits and
the opened map all share the dart numbers of the unicellular map.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from toromaps.config import settings
from toromaps.core.logging import logger
from toromaps.errors import AlgorithmError, MapError, NoPattern, NotBalanced, NotInT, NotRightBiorientation
from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    detach_darts,
    ensure_colors,
    primal_from_angular,
    remove_edges,
)
from toromaps.maps.predicates import check_in_H, hexagon_face
from toromaps.orientations.biorientation import Biorientation, check_S_quad
from toromaps.orientations.flow import alpha_orientation
from toromaps.orientations.schnyder import (
    balance_basis,
    derived_of_quadrangulation,
    minimalize,
    rebalance,
    schnyder_demands,
    sigma_inverse,
)
from toromaps.unicellular import UnicellularMap, classify, is_balanced

A = "a"
B = "b"


# ===== BOUNDARY WORDS =====


@dataclass(frozen=True)
class BoundaryWord:
    """
    Cyclic word of the outer face of a partially closed map.

    Each item is ("a", d) for a side of a plain edge walked along dart d, or
    ("b", p) for a leaf reached by the pending dart p. The leaf's own dart
    is not written.
    """

    carrier: CombMap
    items: tuple[tuple[str, int], ...]

    @property
    def counts(self) -> tuple[int, int]:
        """(|a|, |b|)"""
        n_b = sum(1 for kind, _ in self.items if kind == B)
        return len(self.items) - n_b, n_b

    def __str__(self) -> str:
        return "".join(kind for kind, _ in self.items)

    def patterns(self) -> list[int]:
        """Start positions of the cyclic occurrences of baaa."""
        k = len(self.items)
        return [
            i
            for i in range(k)
            if self.items[i][0] == B and all(self.items[(i + j) % k][0] == A for j in (1, 2, 3))
        ]


def _is_leaf_dart(m: CombMap, d: int) -> bool:
    return m.sigma[d] == d


def boundary_word(u: UnicellularMap | CombMap) -> BoundaryWord:
    """Word of the unique face, read with the face on the right, from the root dart (or dart 1)."""
    m = u.carrier if isinstance(u, UnicellularMap) else u
    start = m.root or 1
    if _is_leaf_dart(m, start):
        start = m.phi[start]
    items = []
    d = start
    while True:
        if not _is_leaf_dart(m, d):
            items.append((B if _is_leaf_dart(m, m.alpha[d]) else A, d))
        d = m.phi[d]
        if d == start:
            break
    return BoundaryWord(carrier=m, items=tuple(items))


def local_closure(w: BoundaryWord, at: int) -> BoundaryWord:
    """
    Merge the leaf at position ``at`` onto the head of the third ``a``, so
    that the leaf's dart, a1, a2 and a3 bound a new quadrangular face, and
    replace baaa by a single ``a`` for the now plain edge.

    Raises:
        NoPattern: the four items at ``at`` are not b, a, a, a
    """
    k = len(w.items)
    if k < 4 or w.items[at % k][0] != B or any(w.items[(at + j) % k][0] != A for j in (1, 2, 3)):
        raise NoPattern(f"no baaa at position {at} of {w}")
    m = w.carrier
    p = w.items[at % k][1]
    leaf = m.alpha[p]
    d3 = w.items[(at + 3) % k][1]
    target = m.alpha[d3]

    sigma = list(m.sigma)
    sigma[leaf] = m.sigma[target]
    sigma[target] = leaf
    carrier = CombMap(alpha=m.alpha, sigma=tuple(sigma), root=m.root, colors=m.colors)

    rotated = w.items[at:] + w.items[:at]
    items = ((A, p),) + rotated[4:]
    return BoundaryWord(carrier=carrier, items=items)


# ===== CLOSURE =====


@dataclass(frozen=True)
class ClosureTrace:
    """Local closures in the order performed, each as (leaf dart, third a dart)."""

    unicellular: UnicellularMap
    steps: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ClosureResult:
    h: CombMap
    x: Biorientation
    trace: ClosureTrace


def _hexagon_root(h: CombMap, items: Sequence[tuple[str, int]]) -> int:
    for _, d in items:
        if h.colors[d] is Color.WHITE:
            return d
    raise AlgorithmError("closed hexagon has no white corner")


def close_all(u: UnicellularMap | CombMap, seed: int | None = None) -> ClosureResult:
    """
    Perform local closures until no leaf remains (psi).

    By default the first baaa of the cyclic word is closed each time; with
    a seed the occurrence is drawn at random.

    Raises:
        NotBalanced: u is not balanced
    """
    if not isinstance(u, UnicellularMap):
        u = classify(u)
    if not is_balanced(u):
        raise NotBalanced(f"{u.carrier!r} has unequal gamma-scores on its kernel cycles")
    rng = np.random.default_rng(seed) if seed is not None else None

    w = boundary_word(u)
    steps = []
    while True:
        n_a, n_b = w.counts
        if n_a != 2 * n_b + 6:
            raise AlgorithmError(f"boundary word {w} breaks |a| = 2|b| + 6")
        if n_b == 0:
            break
        found = w.patterns()
        if not found:
            raise NoPattern(f"word {w} with {n_b} leaves has no baaa")
        at = found[0] if rng is None else found[int(rng.integers(len(found)))]
        leaf = w.carrier.alpha[w.items[at][1]]
        d3 = w.items[(at + 3) % len(w.items)][1]
        w = local_closure(w, at)
        steps.append((leaf, d3))
        logger.debug(f"closed leaf dart {leaf} onto dart {d3}, word now {w}")

    h = w.carrier.with_root(_hexagon_root(w.carrier, w.items))
    leaf_darts = {leaf for leaf, _ in steps}
    x = Biorientation(h, (False,) + tuple(d not in leaf_darts for d in h.darts))
    return ClosureResult(h=h, x=x, trace=ClosureTrace(unicellular=u, steps=tuple(steps)))


def psi(u: UnicellularMap | CombMap) -> CombMap:
    return close_all(u).h


def intermediate_biorientation(trace: ClosureTrace, t: int) -> Biorientation:
    """
    Biorientation after the first t closures, with the pending edges still
    open deleted, rooted on the outer face.
    """
    if not 0 <= t <= len(trace):
        raise ValueError(f"t must lie in 0..{len(trace)}, got {t}")
    w = boundary_word(trace.unicellular)
    for leaf, d3 in trace.steps[:t]:
        m = w.carrier
        p = m.alpha[leaf]
        at = next(i for i, (kind, d) in enumerate(w.items) if kind == B and d == p)
        if w.items[(at + 3) % len(w.items)][1] != d3:
            raise AlgorithmError(f"trace step ({leaf}, {d3}) does not replay")
        w = local_closure(w, at)
    pending = [d for kind, d in w.items if kind == B]
    outer = next(d for kind, d in w.items if kind == A)
    reduced, label = remove_edges(w.carrier, pending, root=outer)
    closed = {label[leaf] for leaf, _ in trace.steps[:t]}
    return Biorientation(reduced, (False,) + tuple(d not in closed for d in reduced.darts))


# ===== OPENING =====


@dataclass(frozen=True)
class DummyVertex:
    """
    Quadrangulation obtained by a black vertex v0 in the hexagon joined to
    its three white corners. ``corner_darts`` are the new darts at the
    white corners, ``v0_darts`` their partners at v0 in the same order.
    """

    q: CombMap
    v0: int
    corner_darts: tuple[int, int, int]
    v0_darts: tuple[int, int, int]


def _white_hexagon_dart(h: CombMap) -> int:
    hexagon = hexagon_face(h)
    r = h.root if h.root is not None and h.face_of[h.root] == hexagon else h.faces[hexagon][0]
    return r if h.colors[r] is Color.WHITE else h.phi[r]


def add_dummy(h: CombMap) -> DummyVertex:
    """
    Raises:
        NotInH: h is not a toroidal 6-quadrangular map of the class
    """
    h = ensure_colors(h)
    check_in_H(h)
    n = h.n_darts
    w0 = _white_hexagon_dart(h)
    walk = [w0]
    while len(walk) < 6:
        walk.append(h.phi[walk[-1]])

    alpha = list(h.alpha) + [0] * 6
    sigma = list(h.sigma) + [0] * 6
    colors = list(h.colors) + [None] * 6
    corner_darts = (n + 1, n + 2, n + 3)
    v0_darts = (n + 4, n + 5, n + 6)
    for k, i in enumerate((0, 2, 4)):
        x, y = corner_darts[k], v0_darts[k]
        before = h.alpha[walk[i - 1]]
        sigma[before] = x
        sigma[x] = walk[i]
        alpha[x], alpha[y] = y, x
        colors[x], colors[y] = Color.WHITE, Color.BLACK
    y0, y2, y4 = v0_darts
    sigma[y0], sigma[y4], sigma[y2] = y4, y2, y0

    q = CombMap(alpha=tuple(alpha), sigma=tuple(sigma), root=y0, colors=tuple(colors))
    return DummyVertex(q=q, v0=q.vertex_of[y0], corner_darts=corner_darts, v0_darts=v0_darts)


def _canonical_on_q(dq: DummyVertex, seed: int | None, root_choice: int, face_order: Sequence[int] | None) -> Biorientation:
    q = dq.q
    primal_from_angular(q)
    mhat, roles = derived_of_quadrangulation(q)
    y = alpha_orientation(mhat, schnyder_demands(mhat, roles), seed=seed)
    if y is None:
        raise NotInT("the derived map admits no Schnyder orientation")
    y = rebalance(y, balance_basis(mhat, roles))
    root_face = mhat.face_of[sorted(dq.v0_darts)[root_choice]]
    y = minimalize(y, root_face, face_order=face_order)
    return sigma_inverse(y, q)


def canonical_biorientation(
    h: CombMap,
    seed: int | None = None,
    root_choice: int = 0,
    face_order: Sequence[int] | None = None,
) -> Biorientation:
    """
    Canonical 3-biorientation of h: minimal balanced Schnyder orientation
    of the derived map of h plus a dummy vertex, transferred back to the
    quadrangulation, with the dummy vertex removed.

    Args:
        h: Member of the 6-quadrangular class
        seed: Shuffles the starting orientation returned by the flow
        root_choice: Which of the three faces at the dummy vertex (by
            increasing dart) serves as root face for minimalization
        face_order: Optional face-selection order for minimalization
    """
    h = ensure_colors(h)
    dq = add_dummy(h)
    bq = _canonical_on_q(dq, seed, root_choice, face_order)
    if settings.VERIFY_ROOT_FACES:
        for other in (1, 2):
            if _canonical_on_q(dq, seed, other, face_order).out != bq.out:
                raise AlgorithmError(f"root face choice {other} changes the canonical biorientation")

    for x, y in zip(dq.corner_darts, dq.v0_darts):
        if not bq.out[y] or bq.out[x]:
            raise NotRightBiorientation(f"dummy edge ({x} {y}) is not directed out of v0")
    b = Biorientation(h, bq.out[: h.n_darts + 1])
    check_S_quad(b)
    return b


def open_map(h: CombMap, seed: int | None = None) -> UnicellularMap:
    """Delete the ingoing half-edges of the canonical biorientation (phi)."""
    h = ensure_colors(h)
    x = canonical_biorientation(h, seed=seed)
    u = detach_darts(h, x.in_darts())
    try:
        return classify(u)
    except MapError as exc:
        raise AlgorithmError(f"opening {h!r} does not give a unicellular map: {exc}") from exc


phi = open_map
