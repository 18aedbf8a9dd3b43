import pytest

from toromaps.bijection import add_dummy
from toromaps.maps.combinatorial import from_cycles
from toromaps.unicellular import assemble, classify

# ===== FIXTURES =====


@pytest.fixture(name="theta")
def theta_fixture():
    """Two vertices joined by three edges on the torus: one hexagonal face."""
    return from_cycles(6, [(1, 4), (2, 5), (3, 6)], [(1, 2, 3), (4, 5, 6)], root=1)


@pytest.fixture(name="triangle_torus")
def triangle_torus_fixture():
    """One vertex, three loops, two triangular faces; face-rooted at (1 5 3)."""
    return from_cycles(6, [(1, 4), (2, 5), (3, 6)], [(1, 2, 3, 4, 5, 6)], root=1)


@pytest.fixture(name="square_torus")
def square_torus_fixture():
    """One vertex, two loops, one quadrangular face."""
    return from_cycles(4, [(1, 3), (2, 4)], [(1, 2, 3, 4)], root=1)


@pytest.fixture(name="planar_loop")
def planar_loop_fixture():
    return from_cycles(2, [(1, 2)], [(1, 2)], root=1)


@pytest.fixture(name="single_edge")
def single_edge_fixture():
    return from_cycles(2, [(1, 2)], [], root=1)


@pytest.fixture(name="star_disk")
def star_disk_fixture():
    """
    Hexagon v0..v5 (darts 1..6 forward, 7..12 backward) with a center joined
    to v0, v2, v4 by darts 13/14, 15/16, 17/18; rooted at a spoke.
    """
    alpha = [(1, 7), (2, 8), (3, 9), (4, 10), (5, 11), (6, 12), (13, 14), (15, 16), (17, 18)]
    sigma = [(1, 13, 12), (2, 7), (3, 15, 8), (4, 9), (5, 17, 10), (6, 11), (14, 16, 18)]
    return from_cycles(18, alpha, sigma, root=13)


@pytest.fixture(name="caterpillar3")
def caterpillar3_fixture():
    """Balanced: one right leaf on each of the three chains."""
    return classify(assemble([("R",), ("R",), ("R",)], "black"))


@pytest.fixture(name="unbalanced3")
def unbalanced3_fixture():
    return classify(assemble([("R",), ("L",), ("R",)], "black"))


@pytest.fixture(name="theta_dummy")
def theta_dummy_fixture(theta):
    """The theta map with a black vertex added in its hexagon."""
    return add_dummy(theta)
