"""
Tests for homology labels, regions and short contractible walks.
"""

import pytest

from toromaps.errors import NotACycle, NotNullHomologous, WrongGenus
from toromaps.maps.combinatorial import angular_map
from toromaps.maps.homology import (
    basis_cycles,
    canonical_rotation,
    check_closed_walk,
    closed_walks,
    det,
    enclosed_region,
    facial_walk,
    homology,
    region_on_right,
    short_contractible_walks,
)


class TestHomologyLabeling:
    """Tree-cotree labels."""

    def test_antisymmetric(self, theta, triangle_torus):
        """label(alpha(d)) = -label(d)."""
        for m in (theta, triangle_torus):
            labeling = homology(m)
            for d in m.darts:
                a, b = labeling.label(d)
                assert labeling.label(m.alpha[d]) == (-a, -b)

    def test_faces_sum_to_zero(self, theta, triangle_torus, square_torus):
        """Every facial walk is contractible."""
        for m in (theta, triangle_torus, square_torus, angular_map(theta)):
            labeling = homology(m)
            for face in m.faces:
                assert labeling.walk_label(face) == (0, 0)

    def test_theta_two_cycles_not_contractible(self, theta):
        """The three 2-cycles of theta wrap around the torus."""
        labeling = homology(theta)
        for cycle in [(1, 5), (2, 6), (3, 4)]:
            assert not labeling.is_contractible(cycle)

    def test_generators(self, theta):
        """Two leftover edges carry the unit vectors."""
        labeling = homology(theta)
        g1, g2 = labeling.generator_darts
        assert {labeling.label(g1), labeling.label(g2)} == {(1, 0), (0, 1)}
        assert len(labeling.tree_edges) == 1
        assert not labeling.cotree_edges

    def test_planar_rejected(self, planar_loop):
        """Labels are only defined on the torus."""
        with pytest.raises(WrongGenus):
            homology(planar_loop)


class TestWalks:
    """Closed walks and their rotations."""

    def test_check_closed_walk(self, theta):
        """Consecutive darts must meet."""
        check_closed_walk(theta, (1, 5))
        with pytest.raises(NotACycle):
            check_closed_walk(theta, (1, 2))

    def test_canonical_rotation(self):
        """Least rotation, no reflection."""
        assert canonical_rotation((5, 3, 4, 2)) == (2, 5, 3, 4)

    def test_facial_walk(self, theta):
        """Facial walk follows phi."""
        assert facial_walk(theta, 1) == (1, 5, 3, 4, 2, 6)

    def test_closed_walks_unique_per_rotation(self, theta):
        """No two listed walks are rotations of each other."""
        walks = closed_walks(theta, 4)
        assert len(walks) == len({canonical_rotation(w) for w in walks})
        assert (1, 5) in walks
        assert all(len(w) <= 4 for w in walks)


class TestRegions:
    """Disk regions on the right of walks."""

    def test_hexagon_is_the_only_short_contractible_walk(self, theta):
        """Theta has only its face contour as a contractible walk up to length 6."""
        found = short_contractible_walks(theta, 6)
        assert [w for w, _ in found] == [(1, 5, 3, 4, 2, 6)]
        region = found[0][1]
        assert region.is_single_face
        assert region.euler_characteristic == 1

    def test_back_and_forth_walk_has_no_region(self, theta):
        """A walk using every edge in both directions out of face order bounds nothing."""
        assert region_on_right(theta, (1, 4, 2, 5, 3, 6)) is None

    def test_quadrangulation_faces_only(self, square_torus):
        """Short contractible walks of an irreducible quadrangulation are its faces."""
        q = angular_map(square_torus)
        found = [w for w, _ in short_contractible_walks(q, 4)]
        assert sorted(found) == sorted(canonical_rotation(f) for f in q.faces)

    def test_enclosed_region_requires_zero_label(self, theta):
        """Non-null-homologous walks are rejected."""
        with pytest.raises(NotNullHomologous):
            enclosed_region(theta, (1, 5))

    def test_enclosed_region_of_face(self, theta_dummy):
        """The former hexagon encloses the dummy vertex, its three edges and three faces."""
        q = theta_dummy.q
        region = enclosed_region(q, (1, 5, 3, 4, 2, 6))
        assert region is not None
        assert region.vertices == {theta_dummy.v0}
        assert len(region.edges) == 3
        assert len(region.faces) == 3
        assert region.contains_edge(q.edge_of[theta_dummy.v0_darts[0]])


class TestBasisCycles:
    """Non-contractible basis."""

    def test_basis_is_unimodular(self, theta, square_torus):
        """The two cycles span the homology lattice."""
        for m in (theta, square_torus):
            labeling = homology(m)
            c1, c2 = basis_cycles(m)
            check_closed_walk(m, c1)
            check_closed_walk(m, c2)
            assert abs(det(labeling.walk_label(c1), labeling.walk_label(c2))) == 1
