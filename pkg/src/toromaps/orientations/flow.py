"""Orientations with prescribed outdegrees, computed as a maximum flow."""

from __future__ import annotations

from collections.abc import Sequence

import networkx as nx
import numpy as np

from toromaps.core.logging import logger
from toromaps.errors import DemandMismatch
from toromaps.maps.combinatorial import CombMap
from toromaps.orientations.biorientation import Orientation


def alpha_orientation(
    m: CombMap, demands: Sequence[int], seed: int | None = None
) -> Orientation | None:
    """
    Orientation in which vertex v has outdegree demands[v], or None if none exists.

    Each edge is a unit of flow sent from the source to one of its
    endpoints, which becomes its tail; vertices drain into the sink with
    capacity equal to their demand.

    Args:
        m: The map
        demands: Outdegree per vertex index
        seed: When given, shuffles the order in which edges enter the
            network, which changes which orientation the flow returns

    Raises:
        DemandMismatch: demands do not sum to the number of edges
    """
    if len(demands) != m.n_vertices:
        raise DemandMismatch(f"{len(demands)} demands for {m.n_vertices} vertices")
    if sum(demands) != m.n_edges:
        raise DemandMismatch(f"demands sum to {sum(demands)}, map has {m.n_edges} edges")

    order = list(range(m.n_edges))
    if seed is not None:
        order = [int(i) for i in np.random.default_rng(seed).permutation(m.n_edges)]

    g = nx.DiGraph()
    g.add_edge("s", "t", capacity=0)
    for i in order:
        a, b = m.edges[i]
        g.add_edge("s", ("e", i), capacity=1)
        g.add_edge(("e", i), ("v", m.tail(a)), capacity=1)
        if m.tail(b) != m.tail(a):
            g.add_edge(("e", i), ("v", m.tail(b)), capacity=1)
    for v, k in enumerate(demands):
        g.add_edge(("v", v), "t", capacity=k)

    flow_value, flow_dict = nx.maximum_flow(g, "s", "t")
    logger.debug(f"alpha-orientation flow {flow_value} of {m.n_edges}")
    if flow_value < m.n_edges:
        return None

    out = [False] * (m.n_darts + 1)
    for i in range(m.n_edges):
        a, b = m.edges[i]
        if flow_dict[("e", i)].get(("v", m.tail(a)), 0) == 1:
            out[a] = True
        else:
            out[b] = True
    return Orientation(m, tuple(out))
