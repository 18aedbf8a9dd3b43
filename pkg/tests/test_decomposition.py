"""
Tests for the hexagon decomposition: corner/edge correspondence, maximal
enclosing hexagons, split and patch, and the triangulation bijection.
"""

from collections import Counter

import pytest

from toromaps.bijection import psi
from toromaps.decomposition import (
    MarkedQuadrangulation,
    boundary_length,
    corner_edge_correspondence,
    edge_corner_correspondence,
    enclosing_hexagons,
    hexagonal_maps_from_quadrangulations,
    iota,
    iota_inverse,
    maximal_enclosing_hexagon,
    patch,
    split,
    v_of_D,
    vertex_bookkeeping,
)
from toromaps.errors import NotInH, NotInT3, NotPatchable, WrongGenus
from toromaps.maps.combinatorial import Color, angular_map, canonical_code, ensure_colors, iso
from toromaps.maps.predicates import check_in_D, check_in_H
from toromaps.oracle import EnumSpec, enumerate_rooted
from toromaps.series import D_series, H_series
from toromaps.unicellular import enumerate_Ubal

HEXAGON = (1, 5, 3, 4, 2, 6)


@pytest.fixture(name="marked_dummy")
def marked_dummy_fixture(theta_dummy):
    """Filled theta marked at a dummy edge."""
    return MarkedQuadrangulation(theta_dummy.q, theta_dummy.q.root)


def _quadrangulations(max_edges):
    for e in range(2, max_edges + 1):
        for m in enumerate_rooted(EnumSpec(edges=e, cls="T")):
            yield angular_map(m)


class TestCorrespondence:
    def test_round_trip(self, square_torus):
        """Corner 1 of the square torus maps to edge 1 of its angular map and back."""
        qm = corner_edge_correspondence(square_torus, 1)
        assert qm.marked == 1
        assert qm.q.n_darts == 2 * square_torus.n_darts
        m, corner = edge_corner_correspondence(qm)
        assert corner == 1
        assert m.alpha == square_torus.alpha
        assert m.sigma == square_torus.sigma

    def test_black_dart_marks_same_edge(self, theta):
        """Marking either dart of an angular edge gives the same corner."""
        qm = corner_edge_correspondence(theta, 2)
        other = MarkedQuadrangulation(qm.q, qm.q.alpha[2])
        assert edge_corner_correspondence(other)[1] == 2

    def test_planar_rejected(self, planar_loop):
        with pytest.raises(WrongGenus):
            corner_edge_correspondence(planar_loop, 1)


class TestEnclosingHexagons:
    def test_theta_contour_is_maximal(self, marked_dummy):
        """The old hexagonal face encloses every dummy edge."""
        walk, region = maximal_enclosing_hexagon(marked_dummy)
        assert walk == HEXAGON
        assert len(region.faces) == 3
        assert boundary_length(marked_dummy.q, [0]) == 4
        assert boundary_length(marked_dummy.q, region.faces) == 0

    def test_every_candidate_contains_marked_edge(self, marked_dummy):
        for _, region in enclosing_hexagons(marked_dummy):
            assert region.contains_edge(marked_dummy.marked_edge)


class TestSplitPatch:
    def test_split_theta_dummy(self, theta, marked_dummy):
        """Splitting gives theta back and the star-shaped disk."""
        s = split(marked_dummy)
        assert s.h_prime.alpha == theta.alpha
        assert s.h_prime.sigma == theta.sigma
        assert s.h_prime.root == 1
        check_in_H(s.h_prime)

        d = s.d_prime
        assert d.n_darts == 18
        assert d.genus == 0
        check_in_D(d)
        assert d.count_colors() == {Color.WHITE: 3, Color.BLACK: 4}
        assert d.color_of_vertex(v_of_D(d)) is Color.WHITE

    def test_every_piece_is_planar_member(self, theta_dummy):
        """Each dummy edge of the filled theta splits off a member of D."""
        q = theta_dummy.q
        for a in theta_dummy.v0_darts:
            check_in_D(split(MarkedQuadrangulation(q.with_root(a), a)).d_prime)

    def test_bookkeeping(self, marked_dummy):
        """Per color, h' and d' together have three more vertices than q."""
        assert vertex_bookkeeping(marked_dummy, split(marked_dummy))

    def test_patch_inverts_split(self, marked_dummy):
        s = split(marked_dummy)
        back = patch(s.h_prime, s.d_prime)
        assert back.marked == 10
        assert iso(back.q, marked_dummy.q)

    def test_patch_star_disk(self, theta, star_disk):
        """Any member of D fits into the hexagon of theta."""
        qm = patch(theta, star_disk)
        assert qm.q.n_faces == 3
        assert qm.q.n_vertices == 3

    def test_patch_needs_white_root(self, theta, star_disk):
        with pytest.raises(NotPatchable):
            patch(ensure_colors(theta, Color.BLACK), star_disk)

    def test_patch_needs_inner_root(self, theta, star_disk):
        with pytest.raises(NotPatchable):
            patch(theta, star_disk.with_root(1))

    @pytest.mark.slow
    def test_split_then_patch_everywhere(self):
        """patch(split(q, e)) = (q, e) for every edge of every small quadrangulation."""
        for q in _quadrangulations(4):
            for a, _ in q.edges:
                qm = MarkedQuadrangulation(q.with_root(a), a)
                s = split(qm)
                back = patch(s.h_prime, s.d_prime)
                assert iso(back.q.with_root(back.marked), qm.q)
                assert vertex_bookkeeping(qm, s)


class TestCounts:
    @pytest.mark.slow
    def test_planar_pieces_match_series(self):
        """Distinct pieces split off small quadrangulations, by inner colors, match D."""
        pieces = {}
        for q in _quadrangulations(4):
            for a, _ in q.edges:
                d = split(MarkedQuadrangulation(q, a)).d_prime
                pieces.setdefault(canonical_code(d), d)
        counts = Counter()
        for d in pieces.values():
            colors = d.count_colors()
            key = (colors[Color.BLACK] - 3, colors[Color.WHITE] - 3)
            if sum(key) <= 2:
                counts[key] += 1
        assert counts[(0, 0)] == 1
        assert counts[(1, 0)] == 1
        assert counts[(0, 1)] == 1
        assert counts[(1, 1)] == 5
        series = D_series(4)
        for (i, j), c in counts.items():
            assert series[i, j] == c

    @pytest.mark.slow
    def test_hexagonal_maps_match_series(self):
        """Distinct h' with at most four vertices, by colors, match H."""
        found = hexagonal_maps_from_quadrangulations(_quadrangulations(4))
        counts = Counter()
        for h in found:
            colors = h.count_colors()
            if colors[Color.BLACK] + colors[Color.WHITE] <= 4:
                counts[(colors[Color.BLACK], colors[Color.WHITE])] += 1
        assert counts[(1, 1)] == 1
        series = H_series(4)
        for i in range(5):
            for j in range(5 - i):
                assert counts[(i, j)] == series[i, j]


class TestTriangulations:
    def test_iota_of_one_vertex_triangulation(self, theta, triangle_torus):
        """Deleting the root-face vertex of the angular map leaves theta."""
        h = iota(triangle_torus)
        assert h.alpha == theta.alpha
        assert h.sigma == theta.sigma
        assert h.root == 1

    def test_iota_inverse(self, triangle_torus):
        t = iota_inverse(iota(triangle_torus))
        assert iso(t, triangle_torus, rooted=False)

    def test_iota_needs_triangulation(self, theta):
        with pytest.raises(NotInT3):
            iota(theta)

    def test_iota_inverse_needs_member(self, square_torus):
        with pytest.raises(NotInH):
            iota_inverse(angular_map(square_torus))

    def test_iota_round_trip_generated(self):
        """Generated triangulations with 3 edges."""
        triangulations = enumerate_rooted(EnumSpec(edges=3, cls="T3"))
        assert triangulations
        for t in triangulations:
            h = iota(t)
            check_in_H(h)
            assert iso(iota_inverse(h), t, rooted=False)

    @pytest.mark.slow
    def test_iota_round_trip_from_closures(self):
        """Members whose black vertices all have degree 3 come from triangulations."""
        found = 0
        for u in enumerate_Ubal(3):
            h = ensure_colors(psi(u))
            if any(h.degree(v) != 3 for v in range(h.n_vertices) if h.color_of_vertex(v) is Color.BLACK):
                continue
            found += 1
            t = iota_inverse(h)
            assert t.n_vertices == h.count_colors()[Color.WHITE]
            assert iso(iota(t), h, rooted=False)
        assert found
