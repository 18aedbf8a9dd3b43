"""
Schnyder orientations of derived maps: the transfer to and from S-quad
3-biorientations of the angular quadrangulation, balancing of gamma-scores,
and minimalization with respect to a root face.

The derived map is taken as the angular map of the quadrangulation q with
n darts. Dart d <= n of q is also dart d of the derived map, at the
q-vertex, and dart n + d sits at the edge-vertex of the face on the right
of d; the two form the edge of the corner ending at d.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence

from toromaps.config import settings
from toromaps.core.logging import logger
from toromaps.errors import ClockwiseFace, NoProgress, NotSQuad, StepBoundExceeded
from toromaps.maps.combinatorial import CombMap, Role, angular_map, derived_roles, ensure_colors
from toromaps.maps.homology import ZERO, HomologyLabeling, basis_cycles, homology
from toromaps.orientations.biorientation import Biorientation, Orientation, check_S_quad, gamma

# ===== DEMANDS AND TRANSFER =====


def schnyder_demands(mhat: CombMap, roles: Sequence[Role | None]) -> list[int]:
    """Outdegree 3 at primal and dual vertices, 1 at edge-vertices."""
    return [1 if roles[cycle[0]] is Role.EDGE else 3 for cycle in mhat.vertices]


def is_schnyder(y: Orientation, roles: Sequence[Role | None]) -> bool:
    return list(y.outdegrees) == schnyder_demands(y.carrier, roles)


def sigma_transfer(x: Biorientation) -> Orientation:
    """
    Orientation of the derived map: the corner edge ending at dart d leaves
    the q-vertex iff d is outgoing in x.

    Raises:
        NotSQuad: x is not an S-quad 3-biorientation
    """
    check_S_quad(x)
    q = x.carrier
    mhat = angular_map(ensure_colors(q))
    n = q.n_darts
    out = [False] * (2 * n + 1)
    for d in q.darts:
        out[d] = x.out[d]
        out[n + d] = not x.out[d]
    return Orientation(mhat, tuple(out))


def sigma_inverse(y: Orientation, q: CombMap) -> Biorientation:
    """
    Raises:
        ClockwiseFace: y has a clockwise face
    """
    mhat = y.carrier
    n = q.n_darts
    if mhat.n_darts != 2 * n:
        raise ValueError(f"derived map has {mhat.n_darts} darts, expected {2 * n}")
    for f in range(mhat.n_faces):
        if y.is_clockwise_face(f):
            raise ClockwiseFace(f"face {mhat.faces[f]} of the derived map is clockwise")
    b = Biorientation(q, (False,) + tuple(y.out[d] for d in range(1, n + 1)))
    try:
        check_S_quad(b)
    except NotSQuad as exc:
        raise NotSQuad(f"transfer of a Schnyder orientation is not S-quad: {exc}") from exc
    return b


# ===== BALANCING =====


def balance_basis(mhat: CombMap, roles: Sequence[Role | None]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two independent non-contractible cycles of the derived map avoiding dual vertices."""
    return basis_cycles(mhat, avoid=lambda v: roles[mhat.vertices[v][0]] is Role.DUAL)


def _score(y: Orientation, basis: Sequence[Sequence[int]]) -> int:
    return sum(abs(gamma(y, c)) for c in basis)


def _simple_cycles(m: CombMap, walk: Sequence[int]) -> list[list[int]]:
    """Split a closed walk into simple cycles."""
    path = [m.tail(walk[0])]
    darts: list[int] = []
    pos = {path[0]: 0}
    cycles = []
    for d in walk:
        darts.append(d)
        w = m.head(d)
        if w in pos:
            i = pos[w]
            cycles.append(darts[i:])
            for v in path[i + 1 :]:
                del pos[v]
            del darts[i:]
            del path[i + 1 :]
        else:
            pos[w] = len(path)
            path.append(w)
    return cycles


def _directed_walks(
    y: Orientation, labeling: HomologyLabeling, target: tuple[int, int]
) -> Iterator[list[int]]:
    """Closed walks along outgoing darts with homology label ``target``, by BFS on (vertex, label)."""
    m = y.carrier
    for s in range(m.n_vertices):
        start = (s, ZERO)
        parent: dict[tuple, tuple | None] = {start: None}
        frontier = [start]
        for _ in range(m.n_vertices):
            nxt = []
            for state in frontier:
                v, lab = state
                for d in m.vertices[v]:
                    if not y.out[d]:
                        continue
                    dl = labeling.labels[d]
                    st = (m.head(d), (lab[0] + dl[0], lab[1] + dl[1]))
                    if st == (s, target):
                        walk = [d]
                        cur = state
                        while parent[cur] is not None:
                            cur, x = parent[cur]
                            walk.append(x)
                        yield walk[::-1]
                    elif st not in parent:
                        parent[st] = (state, d)
                        nxt.append(st)
            frontier = nxt


PRIMARY_CLASSES = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
FALLBACK_CLASSES = tuple(
    (a, b)
    for a in range(-2, 3)
    for b in range(-2, 3)
    if (a, b) != (0, 0) and (a, b) not in PRIMARY_CLASSES
)


def rebalance(y: Orientation, basis: Sequence[Sequence[int]], max_steps: int | None = None) -> Orientation:
    """
    Reverse directed non-contractible cycles until gamma vanishes on both
    basis cycles, each reversal strictly lowering |gamma(C1)| + |gamma(C2)|.

    Raises:
        NoProgress: no improving directed cycle exists
    """
    max_steps = max_steps or settings.REBALANCE_MAX_STEPS
    labeling = homology(y.carrier)
    score = _score(y, basis)
    steps = 0
    while score:
        if steps >= max_steps:
            raise NoProgress(f"score still {score} after {steps} reversals")
        improved = None
        for classes in (PRIMARY_CLASSES, FALLBACK_CLASSES):
            for target in classes:
                for walk in _directed_walks(y, labeling, target):
                    for cycle in _simple_cycles(y.carrier, walk):
                        candidate = y.reverse_edges(cycle)
                        new_score = _score(candidate, basis)
                        if new_score < score:
                            improved = (candidate, new_score, target)
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                if classes is FALLBACK_CLASSES:
                    logger.warning(f"rebalance used fallback homology class {improved[2]}")
                break
        if improved is None:
            raise NoProgress(f"no directed cycle lowers the gamma score {score}")
        y, new_score, target = improved
        logger.debug(f"rebalance step {steps}: class {target}, score {score} -> {new_score}")
        score = new_score
        steps += 1
    return y


# ===== MINIMALIZATION =====


def _face_arcs(y: Orientation) -> list[list[int]]:
    """Arc left(d) -> right(d) for every outgoing dart d."""
    m = y.carrier
    arcs: list[list[int]] = [[] for _ in range(m.n_faces)]
    for d in m.darts:
        if y.out[d]:
            arcs[m.face_of[m.alpha[d]]].append(m.face_of[d])
    return arcs


def _closure(arcs: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for g in arcs[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return seen


def _reversible_set(y: Orientation, root_face: int, face_order: Sequence[int] | None) -> set[int]:
    arcs = _face_arcs(y)
    if face_order is not None:
        for f in face_order:
            if f == root_face:
                continue
            closure = _closure(arcs, f)
            if root_face not in closure:
                return closure
        return set()
    backwards: list[list[int]] = [[] for _ in arcs]
    for f, targets in enumerate(arcs):
        for g in targets:
            backwards[g].append(f)
    reaching = _closure(backwards, root_face)
    return set(range(len(arcs))) - reaching


def minimalize(
    y: Orientation,
    root_face: int,
    face_order: Sequence[int] | None = None,
    step_factor: int | None = None,
) -> Orientation:
    """
    Minimal orientation gamma-equivalent to y with respect to root_face.

    While a non-empty face set avoiding the root face has every boundary
    edge with the set on its right, reverse those boundary edges. By
    default the set is every face that cannot reach the root face in the
    face digraph; with ``face_order`` the out-closure of the first eligible
    face in that order is used instead.

    Raises:
        StepBoundExceeded: more than step_factor * faces**2 reversals
    """
    m = y.carrier
    factor = step_factor or settings.MINIMALIZE_STEP_FACTOR
    bound = factor * m.n_faces ** 2
    steps = 0
    while True:
        s = _reversible_set(y, root_face, face_order)
        if not s:
            return y
        boundary = [
            d for d in m.darts if y.out[d] and m.face_of[d] in s and m.face_of[m.alpha[d]] not in s
        ]
        y = y.reverse_edges(boundary)
        steps += 1
        if steps > bound:
            raise StepBoundExceeded(f"minimalize exceeded {bound} reversal steps")


def is_minimal(y: Orientation, root_face: int) -> bool:
    return not _reversible_set(y, root_face, None)


# ===== PIPELINE ON A QUADRANGULATION =====


def derived_of_quadrangulation(q: CombMap) -> tuple[CombMap, tuple[Role | None, ...]]:
    """The derived map of the map whose angular map is q, with vertex roles."""
    q = ensure_colors(q)
    return angular_map(q), derived_roles(q)
