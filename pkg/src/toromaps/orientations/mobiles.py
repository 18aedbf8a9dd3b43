"""Bimobiles of right biorientations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from toromaps.errors import ExcessMismatch, NotRightBiorientation
from toromaps.maps.combinatorial import CombMap, perm_from_cycles
from toromaps.orientations.biorientation import Biorientation, is_in_Od


class Kind(str, Enum):
    ROUND = "round"
    SQUARE = "square"


@dataclass(frozen=True)
class Bimobile:
    """
    Round vertices are the vertices of the source map, square vertices its
    non-root faces. In the carrier, a bidirected edge stays a round-round
    edge, and the ingoing half of a simply directed edge is moved to the
    square vertex of the face on its right. Buds are the outgoing darts of a
    face contour, counted per square vertex.
    """

    source: Biorientation
    carrier: CombMap
    kinds: tuple[Kind, ...]
    buds: dict[int, int]
    root_buds: int

    @cached_property
    def round_round(self) -> int:
        return sum(1 for a, b in self.carrier.edges if self._kind(a) is Kind.ROUND and self._kind(b) is Kind.ROUND)

    @cached_property
    def round_square(self) -> int:
        return self.carrier.n_edges - self.round_round

    def _kind(self, d: int) -> Kind:
        return self.kinds[self.carrier.vertex_of[d]]

    @property
    def excess(self) -> int:
        return self.round_square + 2 * self.round_round - sum(self.buds.values())

    def square_vertices(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k is Kind.SQUARE]


def phi_plus(b: Biorientation, d: int | None = None) -> Bimobile:
    """
    Args:
        b: Right biorientation of a face-rooted map
        d: Expected root-face degree, when given

    Raises:
        NotRightBiorientation: b is not in the class of right biorientations (of root degree d)
        ExcessMismatch: the bimobile excess differs from the root-face degree
    """
    m = b.carrier
    if m.root is None or not is_in_Od(b, d):
        raise NotRightBiorientation(f"{m!r} with the given flags is not a right biorientation")
    root_face = m.root_face
    if any(not b.out[d] for d in m.faces[root_face]):
        raise NotRightBiorientation("the root face contour has an ingoing half-edge")

    cycles = []
    for cycle in m.vertices:
        kept = tuple(d for d in cycle if b.out[d])
        if kept:
            cycles.append(kept)
    n_round = len(cycles)
    buds: dict[int, int] = {}
    for f, contour in enumerate(m.faces):
        if f == root_face:
            continue
        incoming = tuple(d for d in reversed(contour) if not b.out[d])
        if not incoming:
            raise NotRightBiorientation(f"face {f} has no ingoing half-edge and would give an isolated square vertex")
        cycles.append(incoming)
        buds[len(cycles) - 1] = len(contour) - len(incoming)

    carrier = CombMap(alpha=m.alpha, sigma=perm_from_cycles(m.n_darts, cycles), root=m.root)
    kinds = [Kind.SQUARE] * carrier.n_vertices
    for cycle in cycles[:n_round]:
        kinds[carrier.vertex_of[cycle[0]]] = Kind.ROUND
    by_carrier = {carrier.vertex_of[cycles[i][0]]: k for i, k in buds.items()}
    mobile = Bimobile(
        source=b,
        carrier=carrier,
        kinds=tuple(kinds),
        buds=by_carrier,
        root_buds=len(m.faces[root_face]),
    )
    if mobile.excess != mobile.root_buds:
        raise ExcessMismatch(f"excess {mobile.excess} differs from root-face degree {mobile.root_buds}")
    return mobile
