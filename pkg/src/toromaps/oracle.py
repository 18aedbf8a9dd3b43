"""
Brute-force enumeration of rooted maps, and cross-checks of the bijections
and the series against it.

Rooted maps are generated directly in canonical form: darts are labeled in
the order a traversal from the root discovers them (sigma first, then
alpha), and the search only ever chooses an already labeled dart or the
next fresh label. Every rooted map therefore appears exactly once, with no
isomorphism test.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from itertools import permutations, product
from multiprocessing import Pool

import pandas as pd

from toromaps.bijection import close_all, open_map
from toromaps.config import settings
from toromaps.core.logging import logger
from toromaps.decomposition import MarkedQuadrangulation, patch, split, vertex_bookkeeping
from toromaps.errors import CapExceeded, MapError, ToromapsError
from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    angular_map,
    bipartition,
    canonical_code,
    iso,
)
from toromaps.maps.predicates import is_in_D, is_in_H, is_in_Q, is_in_T, is_in_T3
from toromaps.maps.tmap import dumps
from toromaps.unicellular import classify, enumerate_Ubal, is_balanced, kernel_rootings

# ===== CANONICAL GENERATION =====

# (sigma, alpha, has_preimage, labels used, step); step 2(d-1) sets sigma(d), 2(d-1)+1 sets alpha(d)
State = tuple[tuple[int, ...], tuple[int, ...], tuple[bool, ...], int, int]


def _initial_state(n: int) -> State:
    return ((0,) * (n + 1), (0,) * (n + 1), (False,) * (n + 1), 1, 0)


def _children(state: State, n: int) -> Iterator[State]:
    sigma, alpha, has_pre, count, step = state
    d = step // 2 + 1
    if d > count:
        return
    if step % 2 == 0:
        options = [x for x in range(1, count + 1) if not has_pre[x]]
        if count < n:
            options.append(count + 1)
        for x in options:
            s = list(sigma)
            s[d] = x
            p = list(has_pre)
            p[x] = True
            yield (tuple(s), alpha, tuple(p), max(count, x), step + 1)
    elif alpha[d]:
        yield (sigma, alpha, has_pre, count, step + 1)
    else:
        options = [x for x in range(d + 1, count + 1) if not alpha[x]]
        if count < n:
            options.append(count + 1)
        for x in options:
            a = list(alpha)
            a[d], a[x] = x, d
            yield (sigma, tuple(a), has_pre, max(count, x), step + 1)


def _search(state: State, n: int, stop_at: int | None = None) -> Iterator[State]:
    """Complete states below ``state``, or the states reached at step ``stop_at``."""
    stack = [state]
    while stack:
        s = stack.pop()
        if s[4] == 2 * n or (stop_at is not None and s[4] == stop_at):
            yield s
            continue
        children = list(_children(s, n))
        stack.extend(reversed(children))


def _to_map(state: State) -> CombMap:
    sigma, alpha, _, _, _ = state
    return CombMap(alpha=alpha, sigma=sigma, root=1)


def generate_rooted(n_edges: int) -> Iterator[CombMap]:
    """Every rooted map with n_edges edges, once, in canonical labeling with root 1."""
    n = 2 * n_edges
    for state in _search(_initial_state(n), n):
        yield _to_map(state)


def generate_naive(n_edges: int) -> list[CombMap]:
    """Every (sigma, alpha) pair on 2e darts, deduplicated by rooted canonical code."""
    n = 2 * n_edges
    seen: dict[tuple, CombMap] = {}
    for alpha in _involutions(list(range(1, n + 1))):
        for sigma in _permutations(n):
            try:
                m = CombMap(alpha=alpha, sigma=sigma, root=1)
            except MapError:
                continue
            seen.setdefault(canonical_code(m), m)
    return list(seen.values())


def _involutions(darts: list[int]) -> Iterator[tuple[int, ...]]:
    n = max(darts)

    def pairings(rest: list[int]) -> Iterator[list[tuple[int, int]]]:
        if not rest:
            yield []
            return
        first = rest[0]
        for i in range(1, len(rest)):
            for tail in pairings(rest[1:i] + rest[i + 1 :]):
                yield [(first, rest[i])] + tail

    for pairs in pairings(darts):
        images = [0] * (n + 1)
        for a, b in pairs:
            images[a], images[b] = b, a
        yield tuple(images)


def _permutations(n: int) -> Iterator[tuple[int, ...]]:
    for p in permutations(range(1, n + 1)):
        yield (0,) + p


# ===== CLASS FILTERS =====


def _colored(m: CombMap) -> CombMap | None:
    colors = bipartition(m, Color.WHITE)
    return None if colors is None else m.with_colors(colors)


def _filter_all(m: CombMap) -> CombMap | None:
    return m


def _filter_T(m: CombMap) -> CombMap | None:
    return m if m.genus == 1 and is_in_T(m) else None


def _filter_Q(m: CombMap) -> CombMap | None:
    if m.genus != 1 or any(len(f) != 4 for f in m.faces):
        return None
    m = _colored(m)
    return m if m is not None and is_in_Q(m) else None


def _filter_H(m: CombMap) -> CombMap | None:
    if m.genus != 1 or sorted(len(f) for f in m.faces)[-1:] != [6] or len(m.faces[m.root_face]) != 6:
        return None
    m = _colored(m)
    return m if m is not None and is_in_H(m) else None


def _filter_Ubal(m: CombMap) -> CombMap | None:
    if m.n_faces != 1 or m.genus != 1:
        return None
    m = _colored(m)
    if m is None:
        return None
    try:
        return m if is_balanced(classify(m)) else None
    except MapError:
        return None


def _filter_T3(m: CombMap) -> CombMap | None:
    if m.genus != 1 or any(len(f) != 3 for f in m.faces):
        return None
    return m if is_in_T3(m) else None


def _filter_D(m: CombMap) -> CombMap | None:
    if m.genus != 0:
        return None
    m = _colored(m)
    return m if m is not None and is_in_D(m) else None


CLASS_FILTERS: dict[str, Callable[[CombMap], CombMap | None]] = {
    "all": _filter_all,
    "T": _filter_T,
    "Q": _filter_Q,
    "H": _filter_H,
    "Ubal": _filter_Ubal,
    "T3": _filter_T3,
    "D": _filter_D,
}


# ===== ENUMERATION =====


@dataclass(frozen=True)
class EnumSpec:
    """
    Maps with ``edges`` edges in class ``cls``, optionally restricted to one
    genus or to bipartite maps. Bipartite classes are colored with the root
    vertex white. With ``rooted=False`` one map per unrooted isomorphism
    class is kept (colors ignored).
    """

    edges: int
    cls: str = "all"
    jobs: int = 1
    genus: int | None = None
    bipartite: bool = False
    rooted: bool = True

    def __post_init__(self):
        if self.cls not in CLASS_FILTERS:
            raise ValueError(f"unknown class {self.cls!r}, expected one of {sorted(CLASS_FILTERS)}")
        if self.edges < 1:
            raise ValueError(f"edge count must be positive, got {self.edges}")
        if self.genus is not None and self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")

    def keep(self, m: CombMap) -> CombMap | None:
        if self.genus is not None and m.genus != self.genus:
            return None
        if self.bipartite:
            m = _colored(m) if m.colors is None else m
            if m is None:
                return None
        return CLASS_FILTERS[self.cls](m)


def _check_cap(edges: int) -> None:
    if edges > settings.ENUM_EDGE_CAP:
        raise CapExceeded(f"{edges} edges is above the enumeration cap {settings.ENUM_EDGE_CAP}")


def _run_subtree(args: tuple[State, int, EnumSpec]) -> list[tuple[tuple[int, ...], tuple[int, ...], tuple | None]]:
    state, n, spec = args
    found = []
    for s in _search(state, n):
        m = spec.keep(_to_map(s))
        if m is not None:
            found.append((m.alpha, m.sigma, m.colors))
    return found


def _unrooted_classes(maps: list[CombMap]) -> list[CombMap]:
    seen: dict[tuple, CombMap] = {}
    for m in maps:
        key = min(canonical_code(m, d)[:2] for d in m.darts)
        seen.setdefault(key, m)
    return list(seen.values())


def enumerate_rooted(spec: EnumSpec) -> list[CombMap]:
    """
    Raises:
        CapExceeded: spec.edges is above settings.ENUM_EDGE_CAP
    """
    _check_cap(spec.edges)
    n = 2 * spec.edges
    if spec.jobs <= 1:
        result = [m for m in (spec.keep(x) for x in generate_rooted(spec.edges)) if m is not None]
    else:
        depth = min(settings.ENUM_SPLIT_DEPTH, 2 * n)
        prefixes = list(_search(_initial_state(n), n, stop_at=depth))
        logger.debug(f"partitioned search into {len(prefixes)} subtrees at depth {depth}")
        with Pool(processes=spec.jobs) as pool:
            chunks = pool.imap_unordered(_run_subtree, [(p, n, spec) for p in prefixes])
            raw = [item for chunk in chunks for item in chunk]
        raw.sort(key=lambda t: (t[1], t[0]))
        result = [CombMap(alpha=a, sigma=s, root=1, colors=c) for a, s, c in raw]
    if not spec.rooted:
        result = _unrooted_classes(result)
    mode = "rooted" if spec.rooted else "unrooted"
    logger.info(f"{len(result)} {mode} maps with {spec.edges} edges in class {spec.cls}")
    return result


def count_rooted(spec: EnumSpec) -> int:
    """Number of maps in spec; isomorphism classes when spec.rooted is False."""
    return len(enumerate_rooted(spec))


def coefficient_table(spec: EnumSpec) -> pd.DataFrame:
    """Counts bucketed by (faces, vertices), rows by faces and columns by vertices."""
    buckets = Counter((m.n_faces, m.n_vertices) for m in enumerate_rooted(spec))
    if not buckets:
        return pd.DataFrame()
    rows = range(max(f for f, _ in buckets) + 1)
    cols = range(max(v for _, v in buckets) + 1)
    table = pd.DataFrame(
        [[buckets.get((f, v), 0) for v in cols] for f in rows],
        index=pd.Index(rows, name="faces"),
        columns=pd.Index(cols, name="vertices"),
    )
    return table


def summary_frame(spec: EnumSpec) -> pd.DataFrame:
    """One row per (faces, vertices) bucket with its count."""
    buckets = Counter((m.n_faces, m.n_vertices) for m in enumerate_rooted(spec))
    rows = [
        {"edges": spec.edges, "class": spec.cls, "faces": f, "vertices": v, "count": c}
        for (f, v), c in sorted(buckets.items())
    ]
    return pd.DataFrame(rows, columns=["edges", "class", "faces", "vertices", "count"])


# ===== LATTICE WALKS =====


def count_lattice_walks(n: int, i: int) -> int:
    """Sequences of n steps in {-1, +1} summing to i."""
    return sum(1 for steps in product((-1, 1), repeat=n) if sum(steps) == i)


# ===== CROSS-CHECKS =====


def _record(rows: list[dict], check: str, total: int, failures: list[tuple[str, CombMap]]) -> None:
    rows.append(
        {
            "check": check,
            "inputs": total,
            "failures": len(failures),
            "reason": failures[0][0] if failures else "",
            "witness": dumps(failures[0][1]) if failures else "",
        }
    )


def cross_check_bijections(max_leaves: int = 3, max_t_edges: int = 4, max_h_edges: int = 3) -> pd.DataFrame:
    """
    Run the round-trips over exhaustive inputs and report counterexamples.

    Checks: opening the closure of every balanced unicellular map with at
    most max_leaves leaves, closing the opening of every 6-quadrangular
    map found along the way or generated with at most max_h_edges edges,
    and patch after split on every corner-marked quadrangulation from the
    essentially 3-connected maps with at most max_t_edges edges.
    """
    rows: list[dict] = []

    unicellular = enumerate_Ubal(max_leaves)
    closed = []
    failures: list[tuple[str, CombMap]] = []
    for u in unicellular:
        try:
            result = close_all(u)
            back = open_map(result.h)
            if not iso(back.carrier, u.carrier, rooted=False):
                failures.append(("opening the closure is not isomorphic", u.carrier))
            elif back.node_colors() != u.node_colors():
                failures.append(("node colors changed", u.carrier))
            closed.append(result.h)
        except ToromapsError as exc:
            failures.append((f"{type(exc).__name__}: {exc}", u.carrier))
    _record(rows, "phi(psi(U)) = U", len(unicellular), failures)

    # 2E = 6 + 4(F - 1) on the torus, so members have an odd number of edges
    for e in range(3, min(max_h_edges, settings.ENUM_EDGE_CAP) + 1, 2):
        closed.extend(enumerate_rooted(EnumSpec(edges=e, cls="H")))
    failures = []
    for h in closed:
        try:
            again = close_all(open_map(h)).h
            if not iso(again, h, rooted=False):
                failures.append(("closing the opening is not isomorphic", h))
        except ToromapsError as exc:
            failures.append((f"{type(exc).__name__}: {exc}", h))
    _record(rows, "psi(phi(H)) = H", len(closed), failures)

    failures = []
    total = 0
    for e in range(2, max_t_edges + 1):
        for m in enumerate_rooted(EnumSpec(edges=e, cls="T")):
            q = angular_map(m)
            for a, _ in q.edges:
                total += 1
                qm = MarkedQuadrangulation(q.with_root(a), a)
                try:
                    s = split(qm)
                    back = patch(s.h_prime, s.d_prime)
                    if not iso(back.q.with_root(back.marked), qm.q, rooted=True):
                        failures.append(("patch(split(q)) differs", qm.q))
                    elif not vertex_bookkeeping(qm, s):
                        failures.append(("vertex bookkeeping", qm.q))
                except ToromapsError as exc:
                    failures.append((f"{type(exc).__name__}: {exc}", qm.q))
    _record(rows, "patch(split(Q')) = Q'", total, failures)

    report = pd.DataFrame(rows, columns=["check", "inputs", "failures", "reason", "witness"])
    logger.info(f"cross-check: {int(report['failures'].sum())} failures over {int(report['inputs'].sum())} inputs")
    return report


def hexagon_kernel_balance(max_leaves: int) -> tuple[Counter, Counter]:
    """
    Per (black, white) vertex counts: twice the number of corner-rooted
    6-quadrangular maps, and the number of kernel-rooted balanced
    unicellular maps, both from closing the unicellular ones.
    """
    kernel_rooted: Counter = Counter()
    hexagon_rooted: Counter = Counter()
    for u in enumerate_Ubal(max_leaves):
        colors = u.node_colors()
        key = (colors[Color.BLACK], colors[Color.WHITE])
        kernel_rooted[key] += kernel_rootings(u)
        h = close_all(u).h
        hexagon = h.root_face
        corners = {canonical_code(h, d) for d in h.faces[hexagon] if h.colors[d] is Color.WHITE}
        hexagon_rooted[key] += 2 * len(corners)
    return hexagon_rooted, kernel_rooted
