"""Interaction values and the two orbit-energy evaluators."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from joinforge import (
    Configuration,
    LevelFunction,
    ROOT,
    TreeParams,
    WeightAssignment,
    interaction_value,
    orbit_enumerate,
    orbit_energy_bruteforce,
    orbit_energy_factorized,
)

from conftest import unit_data, vx


def random_data(tree: TreeParams, rng: random.Random):
    weights = WeightAssignment(
        tree, {leaf: rng.uniform(0.1, 4.0) for leaf in tree.leaves()}
    )
    f = LevelFunction(tree, {v: rng.uniform(0.2, 3.0) for v in tree.vertices()})
    return weights, f


class TestInteractionValue:
    def test_worked_example_products(self, binary3, worked_config):
        f = LevelFunction.from_mapping(
            binary3, {ROOT: 2.0, vx(1): 3.0, vx(2, 1): 5.0}, default=1.0
        )
        assert interaction_value(f, worked_config) == pytest.approx(30.0)

    def test_single_particle_is_one(self, binary3):
        f = LevelFunction.constant(binary3, 7.0)
        config = Configuration(binary3, ROOT, (vx(1, 1, 1),))
        assert interaction_value(f, config) == 1.0

    def test_multiplicity_squares_the_factor(self, ternary2):
        # three particles splitting at the root: multiplicity 2 there
        config = Configuration(ternary2, ROOT, (vx(1, 1), vx(2, 1), vx(3, 1)))
        f = LevelFunction.from_mapping(ternary2, {ROOT: 5.0}, default=1.0)
        assert interaction_value(f, config) == pytest.approx(25.0)


class TestBruteForce:
    def test_worked_example_units(self, worked_config):
        weights, f = unit_data(worked_config.tree)
        result = orbit_energy_bruteforce(worked_config, weights, f)
        assert result.value == 64.0
        assert result.terms == 64

    def test_zero_weights(self, worked_config):
        tree = worked_config.tree
        weights = WeightAssignment.constant(tree, 0.0)
        f = LevelFunction.constant(tree, 1.0)
        assert orbit_energy_bruteforce(worked_config, weights, f).value == 0.0

    def test_level_constant_factors(self, worked_config):
        # one join point per level 0, 1, 2 in every orbit member
        tree = worked_config.tree
        weights = WeightAssignment.constant(tree, 1.0)
        f = LevelFunction.by_level(tree, [2.0, 3.0, 5.0, 1.0])
        result = orbit_energy_bruteforce(worked_config, weights, f)
        assert result.value == pytest.approx(64 * 2.0 * 3.0 * 5.0, rel=1e-12)

    def test_pairwise_summation_agrees(self, worked_config):
        rng = random.Random(5)
        weights, f = random_data(worked_config.tree, rng)
        plain = orbit_energy_bruteforce(worked_config, weights, f)
        paired = orbit_energy_bruteforce(worked_config, weights, f, pairwise=True)
        assert paired.value == pytest.approx(plain.value, rel=1e-12)


class TestFactorized:
    def test_worked_example_units(self, worked_config):
        weights, f = unit_data(worked_config.tree)
        assert orbit_energy_factorized(worked_config, weights, f).value == 64.0

    def test_single_particle_returns_cylinder_mass(self, binary3):
        rng = random.Random(8)
        weights, f = random_data(binary3, rng)
        config = Configuration(binary3, vx(2), (vx(2, 1, 1),))
        expected = sum(weights.weight(p) for p in binary3.leaves_below(vx(2)))
        result = orbit_energy_factorized(config, weights, f)
        assert result.value == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "arity,depth,max_n", [(2, 3, 4), (3, 2, 4)], ids=["binary3", "ternary2"]
    )
    def test_matches_bruteforce_on_random_configs(self, arity, depth, max_n):
        tree = TreeParams(arity, depth)
        rng = random.Random(100 * arity + depth)
        leaves = list(tree.leaves())
        for trial in range(15):
            n = rng.randint(1, min(max_n, len(leaves)))
            config = Configuration(tree, ROOT, tuple(rng.sample(leaves, n)))
            weights, f = random_data(tree, rng)
            brute = orbit_energy_bruteforce(config, weights, f)
            fact = orbit_energy_factorized(config, weights, f)
            assert fact.value == pytest.approx(brute.value, rel=1e-12)
            assert fact.terms == brute.terms

    def test_matches_bruteforce_with_zero_weights(self, binary3):
        rng = random.Random(77)
        leaves = list(binary3.leaves())
        weights = WeightAssignment(
            binary3,
            {leaf: 0.0 if rng.random() < 0.4 else rng.uniform(0.5, 2.0) for leaf in leaves},
        )
        f = LevelFunction.constant(binary3, 1.3)
        for _ in range(8):
            config = Configuration(binary3, ROOT, tuple(rng.sample(leaves, 3)))
            brute = orbit_energy_bruteforce(config, weights, f).value
            fact = orbit_energy_factorized(config, weights, f).value
            if brute == 0.0:
                assert fact == 0.0
            else:
                assert fact == pytest.approx(brute, rel=1e-12)

    def test_off_root_base(self, binary3):
        rng = random.Random(13)
        weights, f = random_data(binary3, rng)
        config = Configuration(binary3, vx(1), (vx(1, 1, 1), vx(1, 2, 2)))
        brute = orbit_energy_bruteforce(config, weights, f)
        fact = orbit_energy_factorized(config, weights, f)
        assert fact.value == pytest.approx(brute.value, rel=1e-12)

    def test_invariant_under_orbit_member_choice(self, worked_config):
        rng = random.Random(21)
        weights, f = random_data(worked_config.tree, rng)
        reference = orbit_energy_factorized(worked_config, weights, f).value
        members = list(orbit_enumerate(worked_config))
        for member in rng.sample(members, 10):
            assert orbit_energy_factorized(member, weights, f).value == reference


class TestEnergyProperties:
    @given(c=st.floats(min_value=0.1, max_value=10.0))
    @settings(max_examples=25, deadline=None)
    def test_weight_homogeneity_degree_n(self, c):
        tree = TreeParams(2, 3)
        config = Configuration(tree, ROOT, (vx(1, 1, 1), vx(1, 2, 1), vx(2, 1, 1)))
        rng = random.Random(3)
        weights, f = random_data(tree, rng)
        base = orbit_energy_factorized(config, weights, f).value
        scaled = orbit_energy_factorized(config, weights.scaled(c), f).value
        assert scaled == pytest.approx(c**config.n * base, rel=1e-10)

    @given(c=st.floats(min_value=0.1, max_value=10.0))
    @settings(max_examples=25, deadline=None)
    def test_f_homogeneity_degree_n_minus_one(self, c):
        tree = TreeParams(2, 3)
        config = Configuration(tree, ROOT, (vx(1, 1, 1), vx(1, 2, 1), vx(2, 1, 1)))
        rng = random.Random(4)
        weights, f = random_data(tree, rng)
        base = orbit_energy_factorized(config, weights, f).value
        scaled = orbit_energy_factorized(config, weights, f.scaled(c)).value
        assert scaled == pytest.approx(c ** (config.n - 1) * base, rel=1e-10)

    def test_monotone_in_f_and_weights(self, binary3):
        rng = random.Random(6)
        weights, f = random_data(binary3, rng)
        config = Configuration(
            binary3, ROOT, (vx(1, 1, 1), vx(1, 2, 1), vx(2, 1, 1), vx(2, 2, 2))
        )
        base = orbit_energy_factorized(config, weights, f).value
        for v in [ROOT, vx(1), vx(2, 1), vx(1, 1, 1)]:
            bump_f = LevelFunction(
                binary3, {**f.values, v: f(v) * 2.0}
            )
            assert orbit_energy_factorized(config, weights, bump_f).value >= base
        for leaf in [vx(1, 1, 1), vx(2, 2, 2)]:
            bump_w = WeightAssignment(
                binary3, {**weights.leaf_weights, leaf: weights.weight(leaf) + 1.0}
            )
            assert orbit_energy_factorized(config, bump_w, f).value >= base
