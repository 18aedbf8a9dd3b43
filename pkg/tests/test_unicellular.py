"""
Tests for precubic unicellular maps: classification, kernel decomposition,
balance, assembly, enumeration and sampling.
"""

from itertools import product

import pytest

from toromaps.errors import AlgorithmError, NotACycle, NotPrecubic, NotUnicellular, WrongGenus
from toromaps.maps.combinatorial import Color, iso, unrooted_code
from toromaps.unicellular import (
    LEFT,
    RIGHT,
    assemble,
    binary_trees,
    caterpillar_gamma,
    classify,
    enumerate_Ubal,
    is_balanced,
    kernel_rootings,
    mirror_caterpillar,
    reassemble,
    sample_Ubal,
    side_counts,
    skeleton,
)


class TestClassify:
    def test_theta(self, theta):
        """Theta is the member without leaves."""
        u = classify(theta)
        assert u.n_leaves == 0
        assert len(u.nodes) == 2
        assert u.carrier.colors is not None

    def test_two_faces(self, triangle_torus):
        with pytest.raises(NotUnicellular):
            classify(triangle_torus)

    def test_degree_four(self, square_torus):
        with pytest.raises(NotPrecubic):
            classify(square_torus)

    def test_planar_tree(self, single_edge):
        with pytest.raises(WrongGenus):
            classify(single_edge)

    def test_caterpillar_counts(self, caterpillar3):
        """Nodes = leaves + 2 and plain edges = leaves + 3."""
        assert caterpillar3.n_leaves == 3
        assert len(caterpillar3.nodes) == 5
        assert len(caterpillar3.pending_edges) == 3
        assert len(caterpillar3.plain_edges) == 6
        assert caterpillar3.node_colors() == {Color.BLACK: 2, Color.WHITE: 3}


class TestKernel:
    def test_chains(self, caterpillar3):
        """Three chains of two edges each with one right leaf."""
        dec = caterpillar3.decomposition
        assert [len(c.darts) for c in dec.chains] == [2, 2, 2]
        assert [c.sides for c in dec.chains] == [(RIGHT,)] * 3
        assert dec.gammas == (1, 1, 1)
        assert dec.v1_color is Color.BLACK
        assert len(set(dec.kernel_darts)) == 6

    def test_kernel_of_theta(self, theta):
        """Theta is its own kernel."""
        dec = classify(theta).decomposition
        assert dec.v1 == theta.tail(1)
        assert sorted(dec.kernel_darts) == [1, 2, 3, 4, 5, 6]
        assert all(len(c.darts) == 1 for c in dec.chains)

    def test_kernel_rootings(self, theta, caterpillar3):
        """Theta has two kernel rootings up to symmetry."""
        assert kernel_rootings(classify(theta)) == 2
        assert 1 <= kernel_rootings(caterpillar3) <= 6


class TestBalance:
    def test_side_counts(self, theta):
        """One dart on each side of a 2-cycle of theta."""
        assert side_counts(theta, (1, 5)) == (1, 1)
        with pytest.raises(NotACycle):
            side_counts(theta, (1, 2))

    def test_gamma(self):
        assert caterpillar_gamma((RIGHT, LEFT, RIGHT)) == 1
        assert caterpillar_gamma(()) == 0
        assert mirror_caterpillar((RIGHT, LEFT)) == (LEFT, RIGHT)

    def test_balanced_iff_equal_gammas(self, theta, caterpillar3, unbalanced3):
        """Kernel cycles are balanced exactly when chain scores agree."""
        assert is_balanced(classify(theta))
        assert is_balanced(caterpillar3)
        assert not is_balanced(unbalanced3)

    def test_gamma_rule_exhaustive(self):
        """Skeletons with at most two leaves per chain: equal scores iff balanced."""
        chains = [s for n in range(3) for s in product((LEFT, RIGHT), repeat=n)]
        for sides in product(chains, repeat=3):
            if len({len(s) % 2 for s in sides}) != 1:
                continue
            expected = len({caterpillar_gamma(s) for s in sides}) == 1
            for color in (Color.BLACK, Color.WHITE):
                assert is_balanced(classify(assemble(list(sides), color))) == expected

    def test_balance_ignores_attached_trees(self):
        """A map is balanced exactly when its skeleton is."""
        chains = [s for n in range(3) for s in product((LEFT, RIGHT), repeat=n)]
        for sides in product(chains, repeat=3):
            if sum(len(s) for s in sides) > 3 or len({len(s) % 2 for s in sides}) != 1:
                continue
            trees = [tuple((None, None) if i == 0 else None for i in range(len(s))) for s in sides]
            u = classify(assemble(list(sides), Color.BLACK, trees))
            assert is_balanced(u) == is_balanced(skeleton(u))
        for u in enumerate_Ubal(3):
            assert is_balanced(skeleton(u))

    @pytest.mark.parametrize(
        "sides",
        [
            [(RIGHT,), (RIGHT,), (RIGHT,)],
            [(LEFT,), (LEFT,), (LEFT,)],
            [(RIGHT, LEFT), (), ()],
            [(RIGHT, LEFT), (LEFT, RIGHT), ()],
            [(RIGHT, RIGHT, LEFT), (RIGHT,), (LEFT, RIGHT, RIGHT)],
        ],
    )
    def test_equal_gammas_are_balanced(self, sides):
        assert is_balanced(classify(assemble(sides, Color.WHITE)))


class TestAssembly:
    def test_assemble_validates(self):
        with pytest.raises(ValueError):
            assemble([(RIGHT,), (RIGHT,)])
        with pytest.raises(ValueError):
            assemble([("X",), (RIGHT,), (RIGHT,)])

    def test_reassemble(self, caterpillar3):
        """Decomposing then reassembling gives the same rooted map."""
        back = reassemble(caterpillar3.decomposition)
        assert iso(back, caterpillar3.carrier)

    def test_trees_and_skeleton(self):
        """Bigger trees hang where the leaves were; the skeleton drops them."""
        tree = (None, (None, None))
        u = classify(assemble([(RIGHT,), (RIGHT,), (RIGHT,)], Color.BLACK, [(tree,), (None,), (None,)]))
        assert u.n_leaves == 5
        assert u.decomposition.chains[0].trees == (tree,)
        assert iso(skeleton(u).carrier, assemble([(RIGHT,), (RIGHT,), (RIGHT,)], Color.BLACK))

    def test_binary_trees_catalan(self):
        assert [len(binary_trees(n)) for n in range(1, 6)] == [1, 1, 2, 5, 14]


class TestEnumeration:
    def test_theta_only_without_leaves(self, theta):
        """One class with no leaves and none with exactly one leaf."""
        assert len(enumerate_Ubal(0)) == 1
        assert len(enumerate_Ubal(1)) == 1
        assert iso(enumerate_Ubal(0)[0].carrier, theta, rooted=False)

    def test_invariants(self):
        """Every enumerated map is balanced and precubic with the right cell counts."""
        maps = enumerate_Ubal(3)
        assert len({unrooted_code(u.carrier) for u in maps}) == len(maps)
        for u in maps:
            assert is_balanced(u)
            assert len(u.nodes) == u.n_leaves + 2
            assert len(u.plain_edges) == u.n_leaves + 3
            assert u.carrier.n_faces == 1

    def test_sample(self):
        """Samples are balanced and reproducible."""
        u = sample_Ubal(4, seed=7)
        assert u.n_leaves == 4
        assert is_balanced(u)
        assert unrooted_code(sample_Ubal(4, seed=7).carrier) == unrooted_code(u.carrier)

    def test_sample_gives_up(self):
        with pytest.raises(AlgorithmError):
            sample_Ubal(3, seed=0, max_tries=0)
