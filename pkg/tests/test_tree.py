"""Tree words, joins, join multisets, and cylinder masses."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from joinforge import (
    ConfigurationError,
    ROOT,
    TreeParams,
    Vertex,
    WeightAssignment,
    common_join,
    cylinder_masses,
    join,
    join_multiset,
)

from conftest import vx


words = st.lists(st.integers(min_value=1, max_value=3), min_size=0, max_size=6).map(tuple)


class TestVertex:
    def test_text_round_trip(self):
        for v in (ROOT, vx(2, 1, 1), vx(3,)):
            assert Vertex.from_text(v.to_text()) == v
        assert ROOT.to_text() == ""
        assert vx(2, 1, 1).to_text() == "2.1.1"

    def test_level_and_prefix(self):
        assert ROOT.level == 0
        assert vx(1, 2).level == 2
        assert vx(1).ancestor_of(vx(1, 2, 2))
        assert not vx(2).ancestor_of(vx(1, 2))

    def test_bad_encoding(self):
        with pytest.raises(ConfigurationError):
            Vertex.from_text("1.x.2")


class TestTreeParams:
    def test_counts(self):
        tree = TreeParams(2, 3)
        assert tree.leaf_count == 8
        assert tree.vertex_count == 15
        assert len(list(tree.vertices())) == 15
        tree = TreeParams(3, 2)
        assert tree.leaf_count == 9
        assert tree.vertex_count == 13

    def test_invariants(self):
        with pytest.raises(ConfigurationError):
            TreeParams(1, 3)
        with pytest.raises(ConfigurationError):
            TreeParams(2, 0)

    def test_descendants(self):
        tree = TreeParams(2, 3)
        below = list(tree.descendants_at(vx(2), 2))
        assert below == [vx(2, 1), vx(2, 2)]
        assert list(tree.descendants_at(vx(2, 1), 2)) == [vx(2, 1)]
        with pytest.raises(ConfigurationError):
            list(tree.descendants_at(vx(2, 1), 1))


class TestJoin:
    def test_worked_example_joins(self):
        assert join(vx(1, 1, 1), vx(1, 2, 1)) == vx(1)
        assert join(vx(2, 1, 1), vx(2, 1, 2)) == vx(2, 1)
        assert join(vx(1, 1, 1), vx(2, 1, 1)) == ROOT

    def test_join_of_identical(self):
        v = vx(1, 2, 2)
        assert join(v, v) == v

    @given(a=words, b=words)
    def test_join_is_maximal_common_prefix(self, a, b):
        w = join(Vertex(a), Vertex(b))
        assert w.ancestor_of(Vertex(a)) and w.ancestor_of(Vertex(b))
        # no longer word is a prefix of both
        if w.level < min(len(a), len(b)):
            assert a[w.level] != b[w.level]

    @given(a=words, b=words)
    def test_join_commutes(self, a, b):
        assert join(Vertex(a), Vertex(b)) == join(Vertex(b), Vertex(a))

    def test_join_below_free_level_for_distinct_leaves(self):
        tree = TreeParams(2, 3)
        leaves = list(tree.leaves())
        for a in leaves:
            for b in leaves:
                if a != b:
                    assert join(a, b).level < tree.depth


class TestJoinMultiset:
    def test_worked_example(self):
        particles = (vx(1, 1, 1), vx(1, 2, 1), vx(2, 1, 1), vx(2, 1, 2))
        assert join_multiset(particles) == {ROOT: 1, vx(1): 1, vx(2, 1): 1}

    def test_single_pair(self):
        assert join_multiset((vx(1, 1), vx(1, 2))) == {vx(1): 1}

    def test_eight_particles_two_double_points(self):
        # ternary depth-3 layout: 8 particles, total multiplicity 7, exactly
        # two join points of multiplicity 2
        particles = (
            vx(1, 1, 1), vx(1, 2, 1), vx(1, 3, 1), vx(1, 3, 2),
            vx(2, 1, 1), vx(2, 2, 1), vx(2, 3, 1), vx(2, 3, 2),
        )
        mult = join_multiset(particles)
        assert sum(mult.values()) == 7
        assert sorted(mult.values(), reverse=True) == [2, 2, 1, 1, 1]
        assert mult[vx(1)] == 2 and mult[vx(2)] == 2

    def test_rejects_duplicates_and_singletons(self):
        with pytest.raises(ConfigurationError):
            join_multiset((vx(1, 1), vx(1, 1)))
        with pytest.raises(ConfigurationError):
            join_multiset((vx(1, 1),))

    @given(data=st.data())
    def test_total_multiplicity_is_n_minus_one(self, data):
        tree = TreeParams(
            data.draw(st.sampled_from([2, 3])), data.draw(st.integers(1, 3))
        )
        leaves = list(tree.leaves())
        n = data.draw(st.integers(2, min(5, len(leaves))))
        idx = data.draw(
            st.lists(
                st.integers(0, len(leaves) - 1), min_size=n, max_size=n, unique=True
            )
        )
        particles = tuple(leaves[i] for i in idx)
        mult = join_multiset(particles)
        assert sum(mult.values()) == n - 1
        # every key is a pairwise join and every pairwise join is a key
        pairwise = {join(a, b) for a in particles for b in particles if a != b}
        assert set(mult) == pairwise
        # multiplicity equals occupied children minus one
        for w, r in mult.items():
            occupied = {p.word[w.level] for p in particles if w.ancestor_of(p)}
            assert r == len(occupied) - 1

    def test_common_join(self):
        assert common_join([vx(1, 1, 1), vx(1, 2, 1), vx(1, 2, 2)]) == vx(1)
        with pytest.raises(ConfigurationError):
            common_join([])


class TestCylinderMasses:
    def test_unit_weights_binary(self, binary3):
        masses = cylinder_masses(binary3, WeightAssignment.constant(binary3, 1.0))
        assert masses.mass(vx(2, 1)) == 2.0
        assert masses.mass(vx(1)) == 4.0
        assert masses.mass(ROOT) == 8.0
        assert masses.mass(vx(2, 1, 1)) == 1.0

    def test_zero_weights(self, binary3):
        masses = cylinder_masses(binary3, WeightAssignment.constant(binary3, 0.0))
        assert all(masses.mass(v) == 0.0 for v in binary3.vertices())

    def test_point_mass(self, binary3):
        weights = WeightAssignment.from_mapping(
            binary3, {vx(2, 1, 2): 5.0}, default=0.0
        )
        masses = cylinder_masses(binary3, weights)
        on_path = {ROOT, vx(2), vx(2, 1), vx(2, 1, 2)}
        for v in binary3.vertices():
            assert masses.mass(v) == (5.0 if v in on_path else 0.0)

    @given(scale=st.floats(min_value=0.01, max_value=100.0))
    def test_mass_scales_linearly(self, scale):
        tree = TreeParams(2, 2)
        base_weights = WeightAssignment.from_mapping(
            tree, {vx(1, 1): 1.0, vx(1, 2): 2.0, vx(2, 1): 3.0, vx(2, 2): 4.0}
        )
        one = cylinder_masses(tree, base_weights)
        two = cylinder_masses(tree, base_weights.scaled(scale))
        for v in tree.vertices():
            assert two.mass(v) == pytest.approx(scale * one.mass(v), rel=1e-12)

    def test_missing_leaf_weight(self, binary3):
        partial = {leaf: 1.0 for leaf in list(binary3.leaves())[:-1]}
        with pytest.raises(ConfigurationError):
            WeightAssignment(binary3, partial)

    def test_negative_weight_rejected(self, binary3):
        with pytest.raises(ConfigurationError):
            WeightAssignment.from_mapping(binary3, {vx(1, 1, 1): -1.0})
