"""Interaction energies summed over orbits.

The interaction value of a configuration is the product of a positive
vertex function over its join points, one factor per unit of multiplicity;
a single particle interacts trivially (value 1).  The orbit energy is the
sum, over every ordered tuple in the orbit, of the product of the particle
weights times the interaction value.

Two evaluators are provided.  The brute-force one literally enumerates the
orbit and adds terms; it is the oracle.  The factorized one recurses over
the canonical join shape: a join node with ``d`` branches contributes the
vertex value to the power ``d - 1`` and a sum over injective assignments of
branches to children, a descent segment sums the branch value over all
same-level descendants, and a lone particle contributes the cylinder mass
below its anchor.  Both agree to floating-point reassociation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .orbits import (
    Configuration,
    JoinShape,
    ShapeLeaf,
    extract_shape,
    orbit_enumerate,
    shape_orbit_size,
)
from .tree import (
    CylinderMassTable,
    LevelFunction,
    TreeParams,
    Vertex,
    WeightAssignment,
    cylinder_masses,
    join_multiset,
)


@dataclass(frozen=True)
class EnergyResult:
    """Orbit energy value, the evaluator used, and the orbit cardinality."""

    value: float
    method: str  # "bruteforce" | "factorized"
    terms: int


def interaction_value(f: LevelFunction, config: Configuration) -> float:
    """Product of ``f`` over the join multiset; 1 for a single particle."""
    if config.n == 1:
        return 1.0
    return math.prod(f(w) ** r for w, r in join_multiset(config.particles).items())


def orbit_energy_bruteforce(
    config: Configuration,
    weights: WeightAssignment,
    f: LevelFunction,
    guard: int | None = None,
    pairwise: bool = False,
) -> EnergyResult:
    """Sum weight products times interaction values over the enumerated orbit.

    Terms are added in enumeration order; ``pairwise=True`` switches to
    pairwise summation for rounding stress tests.  Propagates the
    enumeration guard refusal unchanged.
    """
    terms: list[float] = []
    total = 0.0
    count = 0
    for member in orbit_enumerate(config, guard=guard):
        term = math.prod(weights.weight(p) for p in member.particles)
        term *= interaction_value(f, member)
        count += 1
        if pairwise:
            terms.append(term)
        else:
            total += term
    if pairwise:
        total = _pairwise_sum(terms)
    return EnergyResult(total, "bruteforce", count)


def _pairwise_sum(xs: list[float]) -> float:
    if not xs:
        return 0.0
    while len(xs) > 1:
        paired = [xs[i] + xs[i + 1] for i in range(0, len(xs) - 1, 2)]
        if len(xs) % 2:
            paired.append(xs[-1])
        xs = paired
    return xs[0]


def orbit_energy_factorized(
    config: Configuration, weights: WeightAssignment, f: LevelFunction
) -> EnergyResult:
    """Evaluate the orbit energy by recursion over the join shape."""
    shape = extract_shape(config)
    masses = cylinder_masses(config.tree, weights)
    value = factorized_from_shape(config.tree, config.base, shape, masses, f)
    return EnergyResult(value, "factorized", shape_orbit_size(shape, config.tree.arity))


def factorized_from_shape(
    tree: TreeParams,
    base: Vertex,
    shape: JoinShape,
    masses: CylinderMassTable,
    f: LevelFunction,
) -> float:
    """Shape-level evaluator shared by the orbit entry point and the verifier."""
    m = tree.arity

    def over_descents(node: JoinShape, start: Vertex, free_levels: int) -> float:
        if isinstance(node, ShapeLeaf):
            # every leaf below `start` is a valid placement; their weights sum
            # to the cylinder mass regardless of the remaining gap
            return masses.mass(start)
        total = 0.0
        for w in tree.descendants_at(start, start.level + free_levels):
            total += at_join(node, w)
        return total

    def at_join(node: JoinShape, w: Vertex) -> float:
        kids = tree.children(w)
        table = [
            [over_descents(branch, child, branch.gap - 1) for child in kids]
            for branch in node.branches
        ]
        d = node.degree
        assignments = 0.0
        for chosen in itertools.permutations(range(m), d):
            product = 1.0
            for bi, ci in enumerate(chosen):
                product *= table[bi][ci]
            assignments += product
        return f(w) ** (d - 1) * assignments

    return over_descents(shape, base, shape.gap)
