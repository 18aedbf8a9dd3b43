"""
Homology of closed walks on toroidal maps, disk regions, and short
contractible walks.

A walk is a sequence of darts w_0..w_{k-1} with head(w_i) = tail(w_{i+1});
it is closed when head(w_{k-1}) = tail(w_0). Its right side at step i is the
side of the edge of w_i lying in the face on the right of w_i.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from toromaps.core.logging import logger
from toromaps.errors import NotACycle, NotNullHomologous, WrongGenus
from toromaps.maps.combinatorial import CombMap

Vec = tuple[int, int]
ZERO: Vec = (0, 0)


def _add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def _neg(u: Vec) -> Vec:
    return (-u[0], -u[1])


def det(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


# ===== WALKS =====


def check_closed_walk(m: CombMap, walk: Sequence[int]) -> None:
    if not walk:
        raise NotACycle("empty walk")
    for i, d in enumerate(walk):
        nxt = walk[(i + 1) % len(walk)]
        if m.head(d) != m.tail(nxt):
            raise NotACycle(f"dart {d} does not end where dart {nxt} starts")


def canonical_rotation(walk: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation (walks are directed, so no reflection)."""
    k = len(walk)
    return min(tuple(walk[i:]) + tuple(walk[:i]) for i in range(k))


def facial_walk(m: CombMap, d: int) -> tuple[int, ...]:
    """Contour of the face on the right of d, starting at d."""
    walk = [d]
    x = m.phi[d]
    while x != d:
        walk.append(x)
        x = m.phi[x]
    return tuple(walk)


# ===== HOMOLOGY LABELING =====


@dataclass(frozen=True)
class HomologyLabeling:
    """
    Z^2 label per dart with label(alpha(d)) = -label(d) and zero facial sums.

    Spanning-tree edges carry (0,0); the two edges left over by the
    tree-cotree decomposition carry (1,0) and (0,1); labels of cotree edges
    are the ones forced by the zero facial sums.
    """

    owner: CombMap
    labels: tuple[Vec, ...]
    tree_edges: frozenset[int]
    cotree_edges: frozenset[int]
    generator_darts: tuple[int, int]

    def label(self, d: int) -> Vec:
        return self.labels[d]

    def walk_label(self, walk: Sequence[int]) -> Vec:
        total = ZERO
        for d in walk:
            total = _add(total, self.labels[d])
        return total

    def is_contractible(self, walk: Sequence[int]) -> bool:
        check_closed_walk(self.owner, walk)
        return self.walk_label(walk) == ZERO


def homology(m: CombMap) -> HomologyLabeling:
    """Tree-cotree labeling of a genus-1 map."""
    if m.genus != 1:
        raise WrongGenus(f"homology needs a toroidal map, got genus {m.genus}")

    # Spanning tree of vertices
    tree_edges: set[int] = set()
    seen_v = {m.tail(1)}
    queue = deque([m.tail(1)])
    while queue:
        v = queue.popleft()
        for d in m.vertices[v]:
            w = m.head(d)
            if w not in seen_v:
                seen_v.add(w)
                tree_edges.add(m.edge_of[d])
                queue.append(w)

    # Dual spanning tree of faces through the remaining edges
    cotree_edges: set[int] = set()
    parent_dart: dict[int, int] = {}
    order = [0]
    seen_f = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            if m.edge_of[d] in tree_edges:
                continue
            g = m.face_of[m.alpha[d]]
            if g not in seen_f:
                seen_f.add(g)
                cotree_edges.add(m.edge_of[d])
                parent_dart[g] = m.alpha[d]
                order.append(g)
                queue.append(g)

    leftover = [
        i for i in range(m.n_edges) if i not in tree_edges and i not in cotree_edges
    ]
    if len(leftover) != 2:
        raise WrongGenus(f"tree-cotree left {len(leftover)} edges, expected 2")

    labels: list[Vec | None] = [None] * (m.n_darts + 1)
    labels[0] = ZERO
    for i in tree_edges:
        a, b = m.edges[i]
        labels[a] = labels[b] = ZERO
    generators = []
    for i, basis in zip(leftover, ((1, 0), (0, 1))):
        a, b = m.edges[i]
        labels[a], labels[b] = basis, _neg(basis)
        generators.append(a)

    # Leaves of the dual tree first: the parent dart is the only unknown
    for f in reversed(order[1:]):
        p = parent_dart[f]
        total = ZERO
        for d in m.faces[f]:
            if d != p:
                total = _add(total, labels[d])
        labels[p] = _neg(total)
        labels[m.alpha[p]] = total

    return HomologyLabeling(
        owner=m,
        labels=tuple(labels),
        tree_edges=frozenset(tree_edges),
        cotree_edges=frozenset(cotree_edges),
        generator_darts=(generators[0], generators[1]),
    )


# ===== REGIONS =====


@dataclass(frozen=True)
class Region:
    """Open region on the right of a closed walk: interior cells only."""

    owner: CombMap
    vertices: frozenset[int]
    edges: frozenset[int]
    faces: frozenset[int]
    boundary_walk: tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def is_single_face(self) -> bool:
        return len(self.faces) == 1 and not self.vertices and not self.edges

    @cached_property
    def darts(self) -> frozenset[int]:
        """Darts whose right face lies in the region."""
        return frozenset(d for d in self.owner.darts if self.owner.face_of[d] in self.faces)

    def contains_edge(self, edge: int) -> bool:
        return edge in self.edges


def region_on_right(m: CombMap, walk: Sequence[int]) -> Region | None:
    """
    Flood-fill the faces on the right of a closed walk without crossing its
    edges. Returns None unless the walk uses each dart once and every face
    side met on a walk edge is a walk dart (the walk has the region on its
    right only).
    """
    walk_darts = set(walk)
    if len(walk_darts) != len(walk):
        return None
    walk_edges = {m.edge_of[d] for d in walk}
    walk_vertices = {m.tail(d) for d in walk}

    # At each vertex the walk leaves by the first walk edge counterclockwise
    # after the one it arrived on
    for i, d in enumerate(walk):
        x = m.sigma[m.alpha[d]]
        while m.edge_of[x] not in walk_edges:
            x = m.sigma[x]
        if x != walk[(i + 1) % len(walk)]:
            return None

    faces = {m.face_of[d] for d in walk}
    queue = deque(faces)
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            if m.edge_of[d] in walk_edges:
                if d not in walk_darts:
                    return None
                continue
            g = m.face_of[m.alpha[d]]
            if g not in faces:
                faces.add(g)
                queue.append(g)

    edges = {
        m.edge_of[d]
        for f in faces
        for d in m.faces[f]
        if m.edge_of[d] not in walk_edges
    }
    vertices = {
        v
        for v in range(m.n_vertices)
        if v not in walk_vertices and all(m.face_of[d] in faces for d in m.vertices[v])
    }
    return Region(
        owner=m,
        vertices=frozenset(vertices),
        edges=frozenset(edges),
        faces=frozenset(faces),
        boundary_walk=tuple(walk),
    )


def enclosed_region(
    m: CombMap, walk: Sequence[int], labeling: HomologyLabeling | None = None
) -> Region | None:
    """
    Disk region on the right of a null-homologous closed walk, or None.

    Raises:
        NotNullHomologous: the walk has a nonzero homology label
    """
    check_closed_walk(m, walk)
    labeling = labeling or homology(m)
    if labeling.walk_label(walk) != ZERO:
        raise NotNullHomologous(f"walk {tuple(walk)} has label {labeling.walk_label(walk)}")
    region = region_on_right(m, walk)
    if region is None or region.euler_characteristic != 1:
        return None
    return region


def closed_walks(m: CombMap, max_len: int) -> list[tuple[int, ...]]:
    """All closed walks of length <= max_len, one per rotation class."""
    found: set[tuple[int, ...]] = set()
    for start in m.darts:
        origin = m.tail(start)
        stack = [(start,)]
        while stack:
            walk = stack.pop()
            if m.head(walk[-1]) == origin:
                found.add(canonical_rotation(walk))
            if len(walk) == max_len:
                continue
            # The first dart is the least one of some rotation
            for d in m.vertices[m.head(walk[-1])]:
                if d >= start:
                    stack.append(walk + (d,))
    return sorted(found, key=lambda w: (len(w), w))


def short_contractible_walks(
    m: CombMap, max_len: int, labeling: HomologyLabeling | None = None
) -> list[tuple[tuple[int, ...], Region]]:
    """Closed walks of length <= max_len with a disk region on their right."""
    labeling = labeling or homology(m)
    result = []
    for walk in closed_walks(m, max_len):
        if labeling.walk_label(walk) != ZERO:
            continue
        region = region_on_right(m, walk)
        if region is not None and region.euler_characteristic == 1:
            result.append((walk, region))
    logger.debug(f"{len(result)} contractible walks of length <= {max_len} in {m!r}")
    return result


# ===== NON-CONTRACTIBLE BASIS =====


def basis_cycles(
    m: CombMap, avoid: Callable[[int], bool] | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Two simple non-contractible cycles with independent homology classes.

    Fundamental cycles of a BFS tree of the subgraph induced by the vertices
    not rejected by ``avoid``; the pair with the least nonzero |det| of
    their classes is returned (a homology basis when |det| = 1).
    """
    labeling = homology(m)
    allowed = [v for v in range(m.n_vertices) if avoid is None or not avoid(v)]
    allowed_set = set(allowed)
    root = allowed[0]
    parent: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in m.vertices[v]:
            w = m.head(d)
            if w in allowed_set and w not in parent:
                parent[w] = d
                queue.append(w)

    def path_to(v: int) -> list[int]:
        path = []
        while parent[v] is not None:
            path.append(parent[v])
            v = m.tail(parent[v])
        return path[::-1]

    tree_darts = {d for d in parent.values() if d is not None}
    tree_darts |= {m.alpha[d] for d in tree_darts}
    candidates: list[tuple[tuple[int, ...], Vec]] = []
    seen_edges = set()
    for v in allowed:
        if v not in parent:
            continue
        for d in m.vertices[v]:
            w = m.head(d)
            if w not in parent or d in tree_darts or m.edge_of[d] in seen_edges:
                continue
            seen_edges.add(m.edge_of[d])
            pu, pv = path_to(v), path_to(w)
            k = 0
            while k < min(len(pu), len(pv)) and pu[k] == pv[k]:
                k += 1
            cycle = tuple(pu[k:] + [d] + [m.alpha[x] for x in reversed(pv[k:])])
            label = labeling.walk_label(cycle)
            if label != ZERO:
                candidates.append((cycle, label))

    best = None
    for (c1, l1), (c2, l2) in combinations(candidates, 2):
        value = abs(det(l1, l2))
        if value and (best is None or value < best[0] or (value == best[0] and len(c1) + len(c2) < best[1])):
            best = (value, len(c1) + len(c2), c1, c2)
            if value == 1 and best[1] <= 4:
                break
    if best is None:
        raise WrongGenus(f"no pair of independent cycles in the allowed part of {m!r}")
    if best[0] != 1:
        logger.warning(f"basis cycles span a sublattice of index {best[0]}")
    return best[2], best[3]
