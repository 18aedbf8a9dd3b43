"""
Tests for the combinatorial map kernel: validation, cells, duality, angular
maps, bipartition, canonical forms and edge editing.
"""

import pytest

from toromaps.errors import (
    BadColoring,
    InvalidRoot,
    NotBipartite,
    NotConnected,
    NotInvolution,
    NotPermutation,
    WrongGenus,
)
from toromaps.maps.combinatorial import (
    Color,
    CombMap,
    Role,
    angular_map,
    automorphism_count,
    bipartition,
    build_map,
    canonical_code,
    canonical_form,
    derived_map,
    detach_darts,
    dual,
    ensure_colors,
    invert,
    iso,
    orbits,
    perm_from_cycles,
    primal_from_angular,
    remove_edges,
)


class TestValidation:
    """Construction rejects inputs that are not maps."""

    def test_odd_dart_count(self):
        """Dart count must be even."""
        with pytest.raises(NotInvolution):
            build_map(3, [2, 1, 3], [1, 2, 3])

    def test_alpha_fixed_point(self):
        """alpha may not fix a dart."""
        with pytest.raises(NotInvolution):
            CombMap(alpha=(0, 1, 2), sigma=(0, 1, 2))

    def test_sigma_not_permutation(self):
        """sigma must hit every dart once."""
        with pytest.raises(NotPermutation):
            build_map(2, [2, 1], [1, 1])

    def test_disconnected(self):
        """Two separate edges are not one map."""
        with pytest.raises(NotConnected):
            build_map(4, perm_from_cycles(4, [(1, 2), (3, 4)]), perm_from_cycles(4, []))

    def test_root_out_of_range(self, theta):
        """The root must be one of the darts."""
        with pytest.raises(InvalidRoot):
            theta.with_root(7)

    def test_expected_genus(self, theta):
        """expected_genus is enforced."""
        with pytest.raises(WrongGenus):
            build_map(6, theta.alpha, theta.sigma, expected_genus=0)

    def test_colors_must_alternate(self):
        """Both ends of an edge with the same color are rejected."""
        with pytest.raises(BadColoring):
            build_map(2, [2, 1], [1, 2], colors={1: "white", 2: "white"})


class TestCells:
    """Vertices, edges, faces and genus."""

    def test_theta_is_toroidal(self, theta):
        """Theta: 2 vertices, 3 edges, 1 face."""
        assert (theta.n_vertices, theta.n_edges, theta.n_faces) == (2, 3, 1)
        assert theta.genus == 1
        assert theta.faces == [(1, 5, 3, 4, 2, 6)]

    def test_planar_examples(self, planar_loop, single_edge):
        """Loop and single edge are planar."""
        assert planar_loop.genus == 0
        assert single_edge.genus == 0
        assert planar_loop.n_faces == 2
        assert single_edge.n_vertices == 2

    def test_face_on_right(self, theta):
        """face_of indexes the phi orbit holding each dart."""
        for d in theta.darts:
            assert theta.phi[d] in theta.faces[theta.face_of[d]]
            assert theta.face_of[theta.phi[d]] == theta.face_of[d]

    def test_tail_and_head(self, theta):
        """head is the tail of the opposite dart."""
        for d in theta.darts:
            assert theta.head(d) == theta.tail(theta.alpha[d])

    def test_permutation_helpers(self):
        """Cycle notation, orbits and inverse agree."""
        perm = perm_from_cycles(5, [(1, 3, 5), (2, 4)])
        assert orbits(perm) == [(1, 3, 5), (2, 4)]
        inv = invert(perm)
        assert all(inv[perm[d]] == d for d in range(1, 6))

    def test_mirror_keeps_genus(self, theta, triangle_torus):
        """Mirroring changes orientation, not the surface."""
        assert theta.mirror().genus == 1
        assert triangle_torus.mirror().n_faces == triangle_torus.n_faces


class TestDuality:
    """Dual, angular and derived maps."""

    def test_dual_swaps_vertices_and_faces(self, theta, triangle_torus):
        """The dual of theta has as many vertices as theta has faces."""
        d = dual(theta)
        assert (d.n_vertices, d.n_faces) == (theta.n_faces, theta.n_vertices)
        assert iso(d, triangle_torus, rooted=False)

    def test_angular_map_is_quadrangulation(self, theta):
        """Angular map: 2n darts, quadrangular faces, vertices = vertices + faces."""
        q = angular_map(theta)
        assert q.n_darts == 2 * theta.n_darts
        assert all(len(f) == 4 for f in q.faces)
        assert q.n_vertices == theta.n_vertices + theta.n_faces
        assert q.n_faces == theta.n_edges
        assert q.genus == 1
        assert q.count_colors() == {Color.WHITE: 2, Color.BLACK: 1}

    def test_primal_from_angular_inverts(self, theta, triangle_torus, square_torus):
        """Recovering the map from its angular map keeps dart numbers."""
        for m in (theta, triangle_torus, square_torus):
            back = primal_from_angular(angular_map(m))
            assert back.alpha == m.alpha
            assert back.sigma == m.sigma
            assert back.root == m.root

    def test_derived_map_roles(self, theta):
        """The derived map has 4n darts and one role per vertex kind."""
        dm = derived_map(theta)
        assert dm.carrier.n_darts == 4 * theta.n_darts
        roles = {dm.role_of_vertex(v) for v in range(dm.carrier.n_vertices)}
        assert roles == {Role.PRIMAL, Role.DUAL, Role.EDGE}
        edge_vertices = [v for v in range(dm.carrier.n_vertices) if dm.role_of_vertex(v) is Role.EDGE]
        assert len(edge_vertices) == theta.n_edges
        assert all(dm.carrier.degree(v) == 4 for v in edge_vertices)


class TestBipartition:
    """Two-colorings."""

    def test_theta_bipartite(self, theta):
        """Root vertex is white."""
        colors = bipartition(theta)
        assert colors[1] is Color.WHITE
        assert colors[4] is Color.BLACK

    def test_loop_not_bipartite(self, planar_loop):
        """A loop is an odd closed walk."""
        assert bipartition(planar_loop) is None
        with pytest.raises(NotBipartite):
            ensure_colors(planar_loop)

    def test_start_color(self, theta):
        """start_color colors the root vertex."""
        colored = ensure_colors(theta, Color.BLACK)
        assert colored.color_of_vertex(colored.tail(1)) is Color.BLACK


class TestCanonicalForms:
    """Rooted codes, isomorphism and automorphisms."""

    def test_relabel_is_isomorphic(self, theta):
        """Conjugating by a permutation keeps the rooted class."""
        relabeled = theta.relabel([0, 4, 6, 5, 1, 3, 2])
        assert relabeled.root == 4
        assert iso(theta, relabeled)
        assert canonical_code(theta) == canonical_code(relabeled)

    def test_canonical_form_root_first(self, triangle_torus):
        """canonical_form puts the root at dart 1."""
        form = canonical_form(triangle_torus, root=4)
        assert form.root == 1
        assert iso(form, triangle_torus.with_root(4))

    def test_automorphisms(self, theta, square_torus, triangle_torus):
        """Theta and the one-vertex maps are dart-transitive."""
        assert automorphism_count(theta) == 6
        assert automorphism_count(square_torus) == 4
        assert automorphism_count(triangle_torus) == 6

    def test_colors_break_symmetry(self, theta):
        """With colors, only rotations of theta preserve the coloring."""
        assert automorphism_count(ensure_colors(theta)) == 3

    def test_iso_with_one_side_colored(self, theta):
        """Colors are ignored unless both maps carry them."""
        assert iso(theta, ensure_colors(theta))
        assert iso(ensure_colors(theta), theta, rooted=False)

    def test_iso_compares_colors_on_both_sides(self, theta):
        """Root vertex black against root vertex white."""
        black = ensure_colors(theta, Color.BLACK)
        white = ensure_colors(theta, Color.WHITE)
        assert not iso(black, white)
        assert iso(black, white, rooted=False)

    def test_theta_not_iso_to_triangle_torus(self, theta, triangle_torus):
        """Same darts and genus, different vertex counts."""
        assert not iso(theta, triangle_torus, rooted=False)


class TestEditing:
    """Deleting edges and detaching half-edges."""

    def test_remove_edge_of_theta(self, theta):
        """Deleting one edge of theta leaves a planar two-cycle."""
        m, label = remove_edges(theta, [3])
        assert label == {1: 1, 2: 2, 4: 3, 5: 4}
        assert m.n_edges == 2
        assert m.genus == 0
        assert m.faces == [(1, 4), (2, 3)]

    def test_remove_edges_root(self, theta):
        """An explicit root is renumbered."""
        m, label = remove_edges(theta, [1], root=5)
        assert m.root == label[5]

    def test_detach_dart(self, theta):
        """A detached dart becomes its own vertex."""
        m = detach_darts(theta, [1])
        assert m.sigma[1] == 1
        assert m.sigma[3] == 2
        assert m.n_vertices == 3
        assert m.alpha == theta.alpha
