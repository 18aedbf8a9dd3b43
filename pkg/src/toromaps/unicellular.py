"""
Precubic bipartite unicellular toroidal maps.

Such a map has a core (what remains after deleting leaves repeatedly) whose
kernel is two vertices v1, v2 joined by three chains. Every inner node of a
chain carries one extra edge, on the right (R) or on the left (L) of the
chain when walking from v1 to v2, leading to an attached binary tree. A
tree is encoded as None (a leaf) or a pair (first subtree, second subtree)
in counterclockwise order after the edge toward the chain.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from toromaps.core.logging import logger
from toromaps.errors import AlgorithmError, NotACycle, NotBipartite, NotPrecubic, NotUnicellular, WrongGenus
from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    bipartition,
    canonical_code,
    ensure_colors,
    unrooted_code,
)

Tree = tuple | None
RIGHT = "R"
LEFT = "L"


# ===== CLASSIFICATION =====


@dataclass(frozen=True)
class UnicellularMap:
    """Validated precubic bipartite unicellular toroidal map."""

    carrier: CombMap
    leaves: tuple[int, ...]
    nodes: tuple[int, ...]
    pending_edges: tuple[int, ...]
    plain_edges: tuple[int, ...]

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def node_colors(self) -> dict[Color, int]:
        counts = {Color.BLACK: 0, Color.WHITE: 0}
        for v in self.nodes:
            counts[self.carrier.color_of_vertex(v)] += 1
        return counts

    @cached_property
    def decomposition(self) -> "KernelDecomposition":
        return core_kernel(self)


def classify(u: CombMap) -> UnicellularMap:
    """
    Raises:
        NotUnicellular, WrongGenus, NotPrecubic, NotBipartite
    """
    if u.n_faces != 1:
        raise NotUnicellular(f"{u!r} has {u.n_faces} faces")
    if u.genus != 1:
        raise WrongGenus(f"unicellular map of genus {u.genus}")
    degrees = [u.degree(v) for v in range(u.n_vertices)]
    if any(d not in (1, 3) for d in degrees):
        raise NotPrecubic(f"vertex degrees {sorted(set(degrees))}")
    if u.colors is None:
        if bipartition(u) is None:
            raise NotBipartite(f"{u!r} has an odd cycle")
        u = ensure_colors(u)
    leaves = tuple(v for v in range(u.n_vertices) if degrees[v] == 1)
    nodes = tuple(v for v in range(u.n_vertices) if degrees[v] == 3)
    pending = tuple(
        i for i, (a, b) in enumerate(u.edges) if degrees[u.tail(a)] == 1 or degrees[u.tail(b)] == 1
    )
    plain = tuple(i for i in range(u.n_edges) if i not in set(pending))
    return UnicellularMap(carrier=u, leaves=leaves, nodes=nodes, pending_edges=pending, plain_edges=plain)


# ===== CORE AND KERNEL =====


@dataclass(frozen=True)
class Chain:
    """
    Maximal chain of the core from v1 to v2.

    Attributes:
        darts: forward darts, the first at v1, the head of the last at v2
        sides: side of the extra edge at each inner node
        trees: attached tree at each inner node
        extra_darts: dart of each inner node leading to its tree
    """

    darts: tuple[int, ...]
    sides: tuple[str, ...]
    trees: tuple[Tree, ...]
    extra_darts: tuple[int, ...]

    @property
    def gamma(self) -> int:
        return caterpillar_gamma(self.sides)


@dataclass(frozen=True)
class KernelDecomposition:
    unicellular: UnicellularMap
    core_darts: frozenset[int]
    v1: int
    v2: int
    chains: tuple[Chain, Chain, Chain]

    @property
    def kernel_darts(self) -> tuple[int, ...]:
        """The six half-edges of the kernel: three at v1, then three at v2."""
        m = self.unicellular.carrier
        return tuple(c.darts[0] for c in self.chains) + tuple(m.alpha[c.darts[-1]] for c in self.chains)

    @property
    def gammas(self) -> tuple[int, int, int]:
        return tuple(c.gamma for c in self.chains)

    @property
    def v1_color(self) -> Color:
        return self.unicellular.carrier.color_of_vertex(self.v1)

    def kernel_cycles(self) -> list[tuple[int, ...]]:
        """Cycles chain_i followed by chain_j backwards, for (a,b), (b,c), (c,a)."""
        m = self.unicellular.carrier
        cycles = []
        for i, j in ((0, 1), (1, 2), (2, 0)):
            back = tuple(m.alpha[d] for d in reversed(self.chains[j].darts))
            cycles.append(self.chains[i].darts + back)
        return cycles


def _core_darts(m: CombMap) -> set[int]:
    alive = set(m.darts)
    degree = {v: m.degree(v) for v in range(m.n_vertices)}
    stack = [v for v, k in degree.items() if k == 1]
    while stack:
        v = stack.pop()
        if degree[v] != 1:
            continue
        (d,) = [x for x in m.vertices[v] if x in alive]
        alive.discard(d)
        alive.discard(m.alpha[d])
        degree[v] = 0
        w = m.head(d)
        degree[w] -= 1
        if degree[w] == 1:
            stack.append(w)
    return alive


def attached_tree(m: CombMap, d: int) -> Tree:
    """Tree hanging from dart d, read in counterclockwise order."""
    if m.degree(m.head(d)) == 1:
        return None
    up = m.alpha[d]
    first = m.sigma[up]
    second = m.sigma[first]
    return (attached_tree(m, first), attached_tree(m, second))


def core_kernel(u: UnicellularMap) -> KernelDecomposition:
    """
    Decompose into core, kernel and the three chains with their trees.

    v1 is the tail of the root dart when it is a kernel dart, otherwise the
    kernel vertex holding the smallest dart.
    """
    m = u.carrier
    core = _core_darts(m)
    kernel = [v for v in range(m.n_vertices) if sum(1 for d in m.vertices[v] if d in core) == 3]
    if len(kernel) != 2:
        raise NotPrecubic(f"kernel has {len(kernel)} vertices of core degree 3")
    if m.root is not None and m.tail(m.root) in kernel:
        v1 = m.tail(m.root)
        ka = m.root
    else:
        v1 = min(kernel, key=lambda v: min(m.vertices[v]))
        ka = min(m.vertices[v1])
    v2 = kernel[1] if kernel[0] == v1 else kernel[0]
    starts = (ka, m.sigma[ka], m.sigma[m.sigma[ka]])

    chains = []
    for start in starts:
        darts, sides, trees, extras = [start], [], [], []
        x = start
        while m.head(x) != v2:
            if m.head(x) == v1:
                raise NotPrecubic("a chain returns to its start vertex (double loop kernel)")
            x_in = m.alpha[x]
            rest = [m.sigma[x_in], m.sigma[m.sigma[x_in]]]
            (x_out,) = [d for d in rest if d in core]
            (extra,) = [d for d in rest if d not in core]
            sides.append(RIGHT if m.sigma[x_in] == extra else LEFT)
            trees.append(attached_tree(m, extra))
            extras.append(extra)
            darts.append(x_out)
            x = x_out
        chains.append(Chain(tuple(darts), tuple(sides), tuple(trees), tuple(extras)))
    return KernelDecomposition(
        unicellular=u, core_darts=frozenset(core), v1=v1, v2=v2, chains=tuple(chains)
    )


# ===== SIDES AND BALANCE =====


def side_counts(m: CombMap, cycle: Sequence[int]) -> tuple[int, int]:
    """
    (left, right) counts of non-cycle darts at the vertices of a simple
    cycle: at each vertex, darts strictly between the incoming and the
    outgoing cycle dart in counterclockwise order are on the right.
    """
    k = len(cycle)
    for i, d in enumerate(cycle):
        if m.head(d) != m.tail(cycle[(i + 1) % k]):
            raise NotACycle(f"darts {d} and {cycle[(i + 1) % k]} are not consecutive")
    if len({m.tail(d) for d in cycle}) != k:
        raise NotACycle(f"cycle {tuple(cycle)} repeats a vertex")
    left = right = 0
    for i, out in enumerate(cycle):
        incoming = m.alpha[cycle[i - 1]]
        x = m.sigma[incoming]
        while x != out:
            right += 1
            x = m.sigma[x]
        x = m.sigma[out]
        while x != incoming:
            left += 1
            x = m.sigma[x]
    return left, right


def caterpillar_gamma(sides: Sequence[str]) -> int:
    """Right-minus-left count of the non-root leaves of a bi-rooted caterpillar."""
    return sum(1 if s == RIGHT else -1 for s in sides)


def mirror_caterpillar(sides: Sequence[str]) -> tuple[str, ...]:
    return tuple(LEFT if s == RIGHT else RIGHT for s in sides)


def is_balanced(u: UnicellularMap) -> bool:
    m = u.carrier
    for cycle in u.decomposition.kernel_cycles():
        left, right = side_counts(m, cycle)
        if left != right:
            return False
    return True


# ===== ASSEMBLY =====


def assemble(
    sides: Sequence[Sequence[str]],
    v1_color: Color | str = Color.BLACK,
    trees: Sequence[Sequence[Tree]] | None = None,
) -> CombMap:
    """
    Build the map with kernel v1, v2 and three chains with the given sides
    and attached trees (leaves by default), rooted at the first kernel dart.

    v1 has rotation (ka kb kc) and v2 the ends of the chains in the same
    order, which makes the map unicellular and toroidal.
    """
    if len(sides) != 3:
        raise ValueError(f"expected three chains, got {len(sides)}")
    if trees is None:
        trees = [[None] * len(s) for s in sides]
    alpha: dict[int, int] = {}
    sigma: dict[int, int] = {}
    counter = [0]

    def new() -> int:
        counter[0] += 1
        return counter[0]

    def vertex(*darts: int) -> None:
        for i, d in enumerate(darts):
            sigma[d] = darts[(i + 1) % len(darts)]

    def link(a: int, b: int) -> None:
        alpha[a] = b
        alpha[b] = a

    def grow(d: int, tree: Tree) -> None:
        if tree is None:
            leaf = new()
            vertex(leaf)
            link(d, leaf)
            return
        up, first, second = new(), new(), new()
        vertex(up, first, second)
        link(d, up)
        grow(first, tree[0])
        grow(second, tree[1])

    starts = [new(), new(), new()]
    vertex(*starts)
    ends = []
    for start, chain_sides, chain_trees in zip(starts, sides, trees):
        if len(chain_trees) != len(chain_sides):
            raise ValueError("one tree per chain node is required")
        prev = start
        for side, tree in zip(chain_sides, chain_trees):
            x_in, x_out, extra = new(), new(), new()
            if side == RIGHT:
                vertex(x_in, extra, x_out)
            elif side == LEFT:
                vertex(x_in, x_out, extra)
            else:
                raise ValueError(f"side must be 'L' or 'R', got {side!r}")
            link(prev, x_in)
            grow(extra, tree)
            prev = x_out
        end = new()
        link(prev, end)
        ends.append(end)
    vertex(*ends)

    n = counter[0]
    m = CombMap(
        alpha=(0,) + tuple(alpha[d] for d in range(1, n + 1)),
        sigma=(0,) + tuple(sigma[d] for d in range(1, n + 1)),
        root=starts[0],
    )
    return m.with_colors(bipartition(m, Color(v1_color)))


def skeleton(u: UnicellularMap) -> UnicellularMap:
    """Replace every attached tree by a single leaf."""
    dec = u.decomposition
    return classify(assemble([c.sides for c in dec.chains], dec.v1_color))


def reassemble(dec: KernelDecomposition) -> CombMap:
    return assemble([c.sides for c in dec.chains], dec.v1_color, [c.trees for c in dec.chains])


def kernel_rootings(u: UnicellularMap) -> int:
    """Number of distinct kernel-rooted maps obtained by marking one of the six kernel half-edges."""
    m = u.carrier
    return len({canonical_code(m, d) for d in u.decomposition.kernel_darts})


# ===== ENUMERATION =====


def binary_trees(n_leaves: int) -> list[Tree]:
    """All ordered binary trees with the given number of leaves."""
    if n_leaves == 1:
        return [None]
    result = []
    for k in range(1, n_leaves):
        for left in binary_trees(k):
            for right in binary_trees(n_leaves - k):
                result.append((left, right))
    return result


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _tree_assignments(sizes: Sequence[int]) -> Iterator[tuple[Tree, ...]]:
    for combo in product(*(binary_trees(s) for s in sizes)):
        yield combo


def enumerate_Ubal(max_leaves: int) -> list[UnicellularMap]:
    """
    All balanced members with at most max_leaves leaves, one per unrooted
    isomorphism class (colors included), composed from kernel, chain sides
    and attached trees and kept when is_balanced holds.
    """
    seen: dict[tuple, UnicellularMap | None] = {}
    for m_leaves in range(max_leaves + 1):
        for lengths in product(range(m_leaves + 1), repeat=3):
            # Chains of mixed parity are not bipartite
            if sum(lengths) > m_leaves or len({n % 2 for n in lengths}) != 1:
                continue
            if sum(lengths) == 0 and m_leaves > 0:
                continue
            for sides in product(*(product((LEFT, RIGHT), repeat=n) for n in lengths)):
                for sizes in _compositions(m_leaves, sum(lengths)):
                    for flat_trees in _tree_assignments(sizes):
                        split, i = [], 0
                        for n in lengths:
                            split.append(flat_trees[i : i + n])
                            i += n
                        for color in (Color.BLACK, Color.WHITE):
                            m = assemble(sides, color, split)
                            code = unrooted_code(m)
                            if code not in seen:
                                u = classify(m)
                                seen[code] = u if is_balanced(u) else None
    result = sorted((u for u in seen.values() if u is not None), key=lambda u: (u.n_leaves, unrooted_code(u.carrier)))
    logger.debug(f"{len(result)} balanced unicellular maps with <= {max_leaves} leaves")
    return result


# ===== SAMPLING =====


def _random_tree(rng: np.random.Generator, n_leaves: int) -> Tree:
    if n_leaves == 1:
        return None
    k = int(rng.integers(1, n_leaves))
    return (_random_tree(rng, k), _random_tree(rng, n_leaves - k))


def sample_Ubal(n_leaves: int, seed: int | None = None, max_tries: int = 100_000) -> UnicellularMap:
    """
    Random balanced member with n_leaves leaves: random caterpillar triple
    with equal gamma-scores, random attached trees, random kernel color.
    Rejection until balanced; the distribution is not uniform.

    Raises:
        AlgorithmError: max_tries draws gave no balanced map
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        if n_leaves == 0:
            lengths = (0, 0, 0)
        else:
            lengths = tuple(int(x) for x in rng.integers(0, n_leaves + 1, size=3))
            if sum(lengths) == 0 or sum(lengths) > n_leaves or len({n % 2 for n in lengths}) != 1:
                continue
        sides = [tuple(RIGHT if b else LEFT for b in rng.integers(0, 2, size=n)) for n in lengths]
        if len({caterpillar_gamma(s) for s in sides}) != 1:
            continue
        total = sum(lengths)
        if total:
            cuts = sorted(int(c) for c in rng.choice(np.arange(1, n_leaves), size=total - 1, replace=False))
            sizes = [b - a for a, b in zip([0] + cuts, cuts + [n_leaves])]
        else:
            sizes = []
        flat = [_random_tree(rng, s) for s in sizes]
        split, i = [], 0
        for n in lengths:
            split.append(flat[i : i + n])
            i += n
        color = Color.BLACK if rng.integers(0, 2) else Color.WHITE
        u = classify(assemble(sides, color, split))
        if is_balanced(u):
            return u
    raise AlgorithmError(f"no balanced sample with {n_leaves} leaves after {max_tries} tries")
