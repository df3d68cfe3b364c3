"""Configurations and their orbits under root-fixing tree automorphisms.

A configuration is an ordered tuple of distinct leaves descending from a
base vertex.  Two configurations are equivalent when some automorphism of
the rooted tree fixing the base maps one tuple onto the other position by
position.  The complete invariant of an orbit is its *join shape*: a
recursive record of the gaps between successive join points, the branching
at each join point, and the partition of particle indices across branches.

Shapes are kept in a canonical form (branches sorted by a fixed total
order), so orbit equality is shape equality, orbit size is a product over
the shape, and orbit members can be enumerated or counted independently of
each other.  The enumeration path deliberately works by filtering all
ordered tuples on shape equality; it is the brute-force oracle against
which the counting formula and the factorized energy recursion are judged.
"""

from __future__ import annotations

import itertools
import math
import os
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property

from .tree import (
    ConfigurationError,
    TreeParams,
    Vertex,
    common_join,
    join_multiset,
)

DEFAULT_ENUMERATION_GUARD = 10_000_000
GUARD_ENV_VAR = "JOINFORGE_GUARD"


class EnumerationGuardError(RuntimeError):
    """Enumeration refused: the predicted tuple count exceeds the guard."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


def resolve_guard(guard: int | None = None) -> int:
    """Explicit argument wins, then the JOINFORGE_GUARD variable, then the default."""
    if guard is not None:
        return int(guard)
    env = os.environ.get(GUARD_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigurationError(f"{GUARD_ENV_VAR}={env!r} is not an integer") from exc
    return DEFAULT_ENUMERATION_GUARD


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of distinct leaves below a base vertex."""

    tree: TreeParams
    base: Vertex
    particles: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        self.tree.validate_vertex(self.base)
        particles = tuple(self.particles)
        if not particles:
            raise ConfigurationError("a configuration needs at least one particle")
        for p in particles:
            self.tree.validate_vertex(p)
            if not self.tree.is_leaf(p):
                raise ConfigurationError(f"particle {p!r} is not a leaf")
            if not self.base.ancestor_of(p):
                raise ConfigurationError(f"particle {p!r} does not descend from {self.base!r}")
        if len(set(particles)) != len(particles):
            raise ConfigurationError("particles must be pairwise distinct")
        object.__setattr__(self, "particles", particles)

    @property
    def n(self) -> int:
        return len(self.particles)

    def join_multiset(self) -> dict[Vertex, int]:
        return join_multiset(self.particles)

    def to_text(self) -> str:
        return "(" + ", ".join(p.to_text() for p in self.particles) + ")"


@dataclass(frozen=True)
class ShapeLeaf:
    """A branch holding a single particle.

    ``gap`` counts the levels from the owning join point (or the base, for a
    one-particle configuration) down to the free level.
    """

    gap: int
    index: int

    @property
    def min_index(self) -> int:
        return self.index

    @property
    def n_particles(self) -> int:
        return 1

    def indices(self) -> frozenset[int]:
        return frozenset((self.index,))

    @cached_property
    def skeleton(self) -> str:
        return f"{self.gap}#"

    @cached_property
    def serialized(self) -> str:
        return f"{self.gap}#{self.index}"

    def serialize(self, with_indices: bool = True) -> str:
        return self.serialized if with_indices else self.skeleton


@dataclass(frozen=True)
class ShapeNode:
    """A join point with its branches.

    ``gap`` counts the levels from the parent join point (or the base, at
    the top) down to this join point.  The node's multiplicity is
    ``len(branches) - 1``.  Branches are stored in canonical order: sorted
    by their index-free serialization, ties broken by smallest particle
    index, which is a total order because index sets are disjoint.
    """

    gap: int
    branches: tuple["JoinShape", ...]

    def __post_init__(self) -> None:
        if len(self.branches) < 2:
            raise ConfigurationError("a join node needs at least two branches")
        keys = [_branch_key(b) for b in self.branches]
        if keys != sorted(keys):
            raise ConfigurationError("branches are not in canonical order")
        seen: set[int] = set()
        for b in self.branches:
            idx = b.indices()
            if seen & idx:
                raise ConfigurationError("branch index sets overlap")
            seen |= idx

    @property
    def degree(self) -> int:
        return len(self.branches)

    @property
    def multiplicity(self) -> int:
        return len(self.branches) - 1

    @cached_property
    def min_index(self) -> int:
        return min(b.min_index for b in self.branches)

    @cached_property
    def n_particles(self) -> int:
        return sum(b.n_particles for b in self.branches)

    def indices(self) -> frozenset[int]:
        return frozenset().union(*(b.indices() for b in self.branches))

    @cached_property
    def skeleton(self) -> str:
        return f"{self.gap}(" + ",".join(b.skeleton for b in self.branches) + ")"

    @cached_property
    def serialized(self) -> str:
        return f"{self.gap}(" + ",".join(b.serialized for b in self.branches) + ")"

    def serialize(self, with_indices: bool = True) -> str:
        return self.serialized if with_indices else self.skeleton


JoinShape = ShapeLeaf | ShapeNode


def _branch_key(shape: JoinShape) -> tuple[str, int]:
    return (shape.skeleton, shape.min_index)


def extract_shape(config: Configuration) -> JoinShape:
    """Canonical join shape of a configuration; equal across exactly one orbit."""
    items = list(enumerate(config.particles))
    return _shape_of(items, config.base.level, config.tree.depth)


def _shape_of(
    items: list[tuple[int, Vertex]], parent_level: int, depth: int
) -> JoinShape:
    if len(items) == 1:
        index, _ = items[0]
        return ShapeLeaf(gap=depth - parent_level, index=index)
    w = common_join([v for _, v in items])
    parts: dict[int, list[tuple[int, Vertex]]] = {}
    for index, v in items:
        parts.setdefault(v.word[w.level], []).append((index, v))
    branches = tuple(
        sorted(
            (_shape_of(part, w.level, depth) for part in parts.values()),
            key=_branch_key,
        )
    )
    return ShapeNode(gap=w.level - parent_level, branches=branches)


def shape_join_levels(shape: JoinShape, base_level: int) -> list[int]:
    """Join levels with multiplicity, one per slot, in canonical slot order."""
    levels: list[int] = []

    def walk(node: JoinShape, parent_level: int) -> None:
        if isinstance(node, ShapeLeaf):
            return
        level = parent_level + node.gap
        levels.extend([level] * node.multiplicity)
        for b in node.branches:
            walk(b, level)

    walk(shape, base_level)
    return levels


def equivalent(a: Configuration, b: Configuration) -> bool:
    """Position-wise orbit equivalence, by recursive index-set-respecting matching.

    Independent of :func:`extract_shape`: the two routes are cross-checked
    in the test suite rather than one delegating to the other.
    """
    if a.tree != b.tree:
        raise ConfigurationError("configurations live on different trees")
    if a.base != b.base:
        raise ConfigurationError("configurations have different bases")
    if a.n != b.n:
        raise ConfigurationError("configurations have different particle counts")
    return _match(list(enumerate(a.particles)), list(enumerate(b.particles)))


def _match(
    items_a: list[tuple[int, Vertex]], items_b: list[tuple[int, Vertex]]
) -> bool:
    if len(items_a) == 1:
        return True  # single leaves at equal depth are always exchangeable
    wa = common_join([v for _, v in items_a])
    wb = common_join([v for _, v in items_b])
    if wa.level != wb.level:
        return False
    parts_a = _parts_by_indices(items_a, wa.level)
    parts_b = _parts_by_indices(items_b, wb.level)
    if set(parts_a) != set(parts_b):
        return False
    return all(_match(parts_a[key], parts_b[key]) for key in parts_a)


def _parts_by_indices(
    items: list[tuple[int, Vertex]], level: int
) -> dict[frozenset[int], list[tuple[int, Vertex]]]:
    groups: dict[int, list[tuple[int, Vertex]]] = {}
    for index, v in items:
        groups.setdefault(v.word[level], []).append((index, v))
    return {frozenset(i for i, _ in part): part for part in groups.values()}


def shape_orbit_size(shape: JoinShape, arity: int) -> int:
    """Exact orbit cardinality from the shape alone.

    Descents contribute one arity factor per free level (the count of
    candidate vertices at the join level); each join node contributes the
    number of injective branch-to-child assignments times its branch counts.
    """
    return _count(shape, arity, top=True)


def _count(shape: JoinShape, m: int, top: bool) -> int:
    free_levels = shape.gap if top else shape.gap - 1
    descents = m**free_levels
    if isinstance(shape, ShapeLeaf):
        return descents
    if shape.degree > m:
        raise ConfigurationError(
            f"join node with {shape.degree} branches exceeds arity {m}"
        )
    inner = math.prod(_count(b, m, top=False) for b in shape.branches)
    return descents * math.perm(m, shape.degree) * inner


def orbit_size(config: Configuration) -> int:
    return shape_orbit_size(extract_shape(config), config.tree.arity)


@dataclass(frozen=True)
class OrbitDescriptor:
    """Canonical shape plus the number of ordered tuples in the orbit."""

    shape: JoinShape
    size: int


def describe_orbit(config: Configuration) -> OrbitDescriptor:
    shape = extract_shape(config)
    return OrbitDescriptor(shape, shape_orbit_size(shape, config.tree.arity))


def orbit_enumerate(
    config: Configuration, guard: int | None = None
) -> Iterator[Configuration]:
    """Yield every ordered tuple in the orbit exactly once.

    Works by scanning all ordered tuples of distinct leaves below the base
    and keeping those with the same canonical shape.  Refuses up front when
    either the orbit size estimate or the scan size exceeds the guard
    (default 10**7, overridable via the JOINFORGE_GUARD variable), since a
    filter scan must not silently hang.
    """
    limit = resolve_guard(guard)
    estimate = orbit_size(config)
    if estimate > limit:
        raise EnumerationGuardError(
            f"estimated orbit size {estimate} exceeds the enumeration guard {limit}; "
            "use the factorized evaluator instead",
            estimate,
        )
    pool = list(config.tree.leaves_below(config.base))
    scan = math.perm(len(pool), config.n)
    if scan > limit:
        raise EnumerationGuardError(
            f"scanning {scan} ordered tuples exceeds the enumeration guard {limit}; "
            "use the factorized evaluator instead",
            scan,
        )
    return _filtered_orbit(config, pool)


def _filtered_orbit(config: Configuration, pool: list[Vertex]) -> Iterator[Configuration]:
    target = extract_shape(config)
    for tup in itertools.permutations(pool, config.n):
        candidate = Configuration(config.tree, config.base, tup)
        if extract_shape(candidate) == target:
            yield candidate


def realize_shape(tree: TreeParams, base: Vertex, shape: JoinShape) -> Configuration:
    """Build one concrete configuration whose canonical shape is ``shape``.

    Branches are laid onto the lowest-numbered children and descents follow
    all-1 paths, so the result is deterministic.
    """
    tree.validate_vertex(base)
    placed: dict[int, Vertex] = {}

    def place(node: JoinShape, start: Vertex, top: bool) -> None:
        free_levels = node.gap if top else node.gap - 1
        if free_levels < 0:
            raise ConfigurationError("branch gaps must be >= 1")
        at = Vertex(start.word + (1,) * free_levels)
        if isinstance(node, ShapeLeaf):
            if at.level != tree.depth:
                raise ConfigurationError(
                    f"leaf gap {node.gap} does not reach the free level from {start!r}"
                )
            placed[node.index] = at
            return
        if node.degree > tree.arity:
            raise ConfigurationError(
                f"join node with {node.degree} branches exceeds arity {tree.arity}"
            )
        for j, branch in enumerate(node.branches):
            place(branch, at.child(j + 1), top=False)

    place(shape, base, top=True)
    indices = sorted(placed)
    if indices != list(range(len(indices))):
        raise ConfigurationError("shape particle indices must be 0..n-1")
    return Configuration(tree, base, tuple(placed[i] for i in indices))
