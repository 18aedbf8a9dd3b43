"""
Biorientations and orientations layered over a map.

A biorientation gives every dart an out/in flag with at least one out dart
per edge; an orientation has exactly one. Flags are stored per dart in a
tuple whose index 0 is unused.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from toromaps.errors import NotACycle, NotRightBiorientation, NotSQuad
from toromaps.maps.combinatorial import CombMap
from toromaps.maps.homology import basis_cycles, canonical_rotation, facial_walk


@dataclass(frozen=True)
class Biorientation:
    carrier: CombMap
    out: tuple[bool, ...]

    def __post_init__(self):
        m = self.carrier
        if len(self.out) != m.n_darts + 1:
            raise ValueError(f"expected {m.n_darts} flags, got {len(self.out) - 1}")
        for a, b in m.edges:
            if not (self.out[a] or self.out[b]):
                raise NotRightBiorientation(f"edge ({a} {b}) has no outgoing half-edge")

    @classmethod
    def from_out_darts(cls, m: CombMap, out_darts: Iterable[int]) -> "Biorientation":
        chosen = set(out_darts)
        return cls(m, (False,) + tuple(d in chosen for d in m.darts))

    def is_out(self, d: int) -> bool:
        return self.out[d]

    def is_bidirected(self, d: int) -> bool:
        return self.out[d] and self.out[self.carrier.alpha[d]]

    @cached_property
    def outdegrees(self) -> tuple[int, ...]:
        m = self.carrier
        return tuple(sum(1 for d in cycle if self.out[d]) for cycle in m.vertices)

    def outdegree(self, v: int) -> int:
        return self.outdegrees[v]

    def ccw_degree(self, f: int) -> int:
        """Simply directed edges with face f on their left: ingoing darts of the contour."""
        return sum(1 for d in self.carrier.faces[f] if not self.out[d])

    def in_darts(self) -> list[int]:
        return [d for d in self.carrier.darts if not self.out[d]]

    def with_carrier(self, m: CombMap) -> "Biorientation":
        return type(self)(m, self.out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Biorientation) and self.out == other.out and self.carrier.alpha == other.carrier.alpha

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Orientation(Biorientation):
    """Every edge simply directed."""

    def __post_init__(self):
        super().__post_init__()
        for a, b in self.carrier.edges:
            if self.out[a] and self.out[b]:
                raise ValueError(f"edge ({a} {b}) is bidirected in a plain orientation")

    def chosen(self, edge: int) -> int:
        a, b = self.carrier.edges[edge]
        return a if self.out[a] else b

    def reversed(self) -> "Orientation":
        return Orientation(self.carrier, (False,) + tuple(not f for f in self.out[1:]))

    def reverse_edges(self, darts: Iterable[int]) -> "Orientation":
        flags = list(self.out)
        m = self.carrier
        for d in darts:
            flags[d] = not flags[d]
            flags[m.alpha[d]] = not flags[m.alpha[d]]
        return Orientation(m, tuple(flags))

    def is_clockwise_face(self, f: int) -> bool:
        return all(self.out[d] for d in self.carrier.faces[f])


# ===== FACE CONDITIONS =====


def is_S_quad(b: Biorientation) -> bool:
    """Outdegree 3 everywhere, ccw-degree 1 on quadrangles, 0 on the other face."""
    try:
        check_S_quad(b)
    except NotSQuad:
        return False
    return True


def check_S_quad(b: Biorientation) -> None:
    m = b.carrier
    for v, k in enumerate(b.outdegrees):
        if k != 3:
            raise NotSQuad(f"vertex {v} has outdegree {k}")
    for f, cycle in enumerate(m.faces):
        expected = 1 if len(cycle) == 4 else 0
        if b.ccw_degree(f) != expected:
            raise NotSQuad(f"face {f} of degree {len(cycle)} has ccw-degree {b.ccw_degree(f)}")


# ===== GAMMA SCORES =====


def _sides(m: CombMap, cycle: Sequence[int]) -> list[tuple[list[int], list[int]]]:
    """(right darts, left darts) at each vertex of a simple cycle."""
    k = len(cycle)
    for i, d in enumerate(cycle):
        if m.head(d) != m.tail(cycle[(i + 1) % k]):
            raise NotACycle(f"darts {d} and {cycle[(i + 1) % k]} are not consecutive")
    if len({m.tail(d) for d in cycle}) != k:
        raise NotACycle(f"cycle {tuple(cycle)} repeats a vertex")
    result = []
    for i, out in enumerate(cycle):
        incoming = m.alpha[cycle[i - 1]]
        right, left = [], []
        x = m.sigma[incoming]
        while x != out:
            right.append(x)
            x = m.sigma[x]
        x = m.sigma[out]
        while x != incoming:
            left.append(x)
            x = m.sigma[x]
        result.append((right, left))
    return result


def gamma(o: Biorientation, cycle: Sequence[int]) -> int:
    """Outgoing darts on the right minus on the left of a directed cycle; cycle edges count nothing."""
    total = 0
    for right, left in _sides(o.carrier, cycle):
        total += sum(1 for d in right if o.out[d]) - sum(1 for d in left if o.out[d])
    return total


def gamma_bar(b: Biorientation, cycle: Sequence[int]) -> int:
    """
    (o_R + o_fwd) - (o_L + o_bwd): side counts plus outgoing cycle darts
    oriented forward, minus those oriented backward.
    """
    m = b.carrier
    forward = sum(1 for d in cycle if b.out[d])
    backward = sum(1 for d in cycle if b.out[m.alpha[d]])
    return gamma(b, cycle) + forward - backward


def is_balanced_biorientation(b: Biorientation) -> bool:
    c1, c2 = basis_cycles(b.carrier)
    return gamma_bar(b, c1) == 0 and gamma_bar(b, c2) == 0


# ===== RIGHTMOST WALKS =====


@dataclass(frozen=True)
class RightmostWalk:
    """Outgoing darts h_0, h_2, ... before the loop, then the looping closed walk."""

    prefix: tuple[int, ...]
    loop: tuple[int, ...]


def next_rightmost(b: Biorientation, h: int) -> int:
    m = b.carrier
    x = m.sigma[m.alpha[h]]
    while not b.out[x]:
        x = m.sigma[x]
    return x


def rightmost_walk(b: Biorientation, h: int) -> RightmostWalk:
    if not b.out[h]:
        raise ValueError(f"dart {h} is not outgoing")
    position: dict[int, int] = {}
    seq = []
    while h not in position:
        position[h] = len(seq)
        seq.append(h)
        h = next_rightmost(b, h)
    start = position[h]
    return RightmostWalk(prefix=tuple(seq[:start]), loop=tuple(seq[start:]))


def is_in_Od(b: Biorientation, d: int | None = None) -> bool:
    """
    Right biorientation: every vertex has an outgoing dart and every
    rightmost walk loops on the root-face contour with the root face on its
    right. ``d`` optionally pins the root-face degree.
    """
    m = b.carrier
    if m.root is None:
        raise NotRightBiorientation("right biorientations need a face-rooted map")
    contour = canonical_rotation(facial_walk(m, m.root))
    if d is not None and len(contour) != d:
        return False
    if any(k == 0 for k in b.outdegrees):
        return False
    loops: dict[int, bool] = {}
    for h in m.darts:
        if not b.out[h] or h in loops:
            continue
        walk = rightmost_walk(b, h)
        ok = canonical_rotation(walk.loop) == contour
        for x in walk.prefix + walk.loop:
            loops[x] = ok
        if not ok:
            return False
    return True


# ===== CONTRACTIBLE WALK COUNTS =====


def walk_counts(b: Biorientation, walk: Sequence[int]) -> tuple[int, int, int]:
    """
    (cw, ccw, o) for a closed walk with a disk on its right: outgoing darts
    just after a vertex, just before a vertex, and outgoing darts inside
    the disk at walk vertices.
    """
    m = b.carrier
    cw = sum(1 for d in walk if b.out[d])
    ccw = sum(1 for d in walk if b.out[m.alpha[d]])
    o = 0
    for i, out in enumerate(walk):
        x = m.sigma[m.alpha[walk[i - 1]]]
        while x != out:
            if b.out[x]:
                o += 1
            x = m.sigma[x]
    return cw, ccw, o
