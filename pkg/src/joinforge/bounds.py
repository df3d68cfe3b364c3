"""The product bound and all of its constant regimes.

The orbit energy is bounded by a constant ``K`` times a product, over the
``n - 1`` exponent slots of the shape, of weighted power sums of the vertex
function across the slot's join level, each raised to the reciprocal of its
exponent.  The exponents are positive reals whose reciprocals sum to one
(or to ``1 - coexponent`` in the recursive form, where a coexponent of zero
encodes the plain statement).

Constant regimes:

* ``k_general`` — a product of factorial ratios over the distinct join
  nodes; always valid, equal to 1 on binary shapes, never larger than
  ``(m - 1)**(n - 1)``.
* ``k_binary`` — the sharp ``2**-(n-1)`` for binary shapes whose branch
  reciprocal sums stay at or below one half at every join node (the
  "halves" condition); falls back to the general constant otherwise.
* ``k_inductive`` — the constant accumulated by the proof recursion: one
  factor per join node built from the symmetric-sum constants ``K(m; a)``
  together with branch conjugacy bookkeeping.  Nodes whose symmetric-sum
  constant has no closed form are estimated numerically and flagged, since
  a numeric maximum is a lower bound for the true constant rather than a
  certified upper bound.

The symmetric-sum constant ``K(m; a)`` is the least ``C`` with
``sum over permutations of x_sigma(1)**a_1 ... <= C * (sum x_i)**s`` for
all nonnegative ``x`` (``0**0 = 1``), where ``s = sum(a)``.  Closed forms
cover ``s <= 1``, the well-spread case ``a_i >= (s-1)/m``, and the two-
variable case ``(a_1-a_2)**2 <= s``; otherwise only the bracket
``[m! m**-s, (m-1)!]`` is known and a simplex maximizer estimates the rest.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .orbits import JoinShape, ShapeLeaf
from .tree import ConfigurationError, CylinderMassTable, LevelFunction, TreeParams, Vertex

CONJUGACY_RTOL = 1e-12
HALF_TOL = 1e-12


# ---------------------------------------------------------------------------
# Exponent slots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    """One exponent slot: a join node owns one slot per unit of multiplicity."""

    slot_id: int
    level: int
    node_path: tuple[int, ...]  # branch indices from the top node


def shape_slots(shape: JoinShape, base_level: int) -> tuple[Slot, ...]:
    """Slots in canonical order: preorder over nodes, node slots before branches."""
    slots: list[Slot] = []

    def walk(node: JoinShape, parent_level: int, path: tuple[int, ...]) -> None:
        if isinstance(node, ShapeLeaf):
            return
        level = parent_level + node.gap
        for _ in range(node.multiplicity):
            slots.append(Slot(len(slots), level, path))
        for j, branch in enumerate(node.branches):
            walk(branch, level, path + (j,))

    walk(shape, base_level, ())
    return tuple(slots)


@dataclass(frozen=True)
class ExponentAssignment:
    """Exponents bound to slots in canonical order, plus the coexponent 1/alpha.

    A coexponent of 0 encodes alpha = infinity (the plain, non-recursive
    statement); no infinities ever enter the arithmetic.
    """

    exponents: tuple[float, ...]
    coexponent: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(float(p) for p in self.exponents))
        co = float(self.coexponent)
        if not 0.0 <= co <= 1.0:
            raise ConfigurationError(f"coexponent must lie in [0, 1], got {co!r}")
        object.__setattr__(self, "coexponent", co)

    @property
    def n_slots(self) -> int:
        return len(self.exponents)

    def reciprocals(self) -> tuple[float, ...]:
        return tuple(1.0 / p for p in self.exponents)


@dataclass(frozen=True)
class ExponentViolation:
    """Which exponent constraint failed and by how much."""

    constraint: str  # "count" | "positivity" | "conjugacy"
    message: str
    residual: float


def validate_exponents(
    shape: JoinShape, pa: ExponentAssignment
) -> ExponentViolation | None:
    """Check slot count, positivity, and the conjugacy sum; None when valid."""
    expected = shape.n_particles - 1
    if pa.n_slots != expected:
        return ExponentViolation(
            "count",
            f"expected {expected} exponents for {shape.n_particles} particles, "
            f"got {pa.n_slots}",
            abs(pa.n_slots - expected),
        )
    bad = [p for p in pa.exponents if not p > 0.0]
    if bad:
        return ExponentViolation(
            "positivity", f"exponents must be positive, found {bad}", float(len(bad))
        )
    residual = abs(sum(1.0 / p for p in pa.exponents) + pa.coexponent - 1.0)
    if residual > CONJUGACY_RTOL:
        return ExponentViolation(
            "conjugacy",
            f"reciprocals plus coexponent must sum to 1, residual {residual:.3e}",
            residual,
        )
    return None


# ---------------------------------------------------------------------------
# Level power sums and the product bound
# ---------------------------------------------------------------------------


def _pow(x: float, e: float) -> float:
    # 0**0 := 1, applied wherever powers of possibly-zero masses appear
    return 1.0 if e == 0.0 else x**e


def level_power_sum(
    tree: TreeParams,
    masses: CylinderMassTable,
    f: LevelFunction,
    base: Vertex,
    level: int,
    p: float,
) -> float:
    """Sum of ``f(j)**p * mass(j)**(1+p)`` over vertices ``j`` at ``level`` below ``base``."""
    if level < base.level or level > tree.depth:
        raise ConfigurationError(
            f"level {level} outside {base.level}..{tree.depth} for {base!r}"
        )
    total = 0.0
    for j in tree.descendants_at(base, level):
        total += _pow(f(j), p) * _pow(masses.mass(j), 1.0 + p)
    return total


def _log_level_power_sum(
    tree: TreeParams,
    masses: CylinderMassTable,
    f: LevelFunction,
    base: Vertex,
    level: int,
    p: float,
) -> float:
    """log of level_power_sum, -inf when it vanishes; safe for extreme exponents."""
    logs = []
    for j in tree.descendants_at(base, level):
        mass = masses.mass(j)
        if mass == 0.0:
            continue
        logs.append(p * math.log(f(j)) + (1.0 + p) * math.log(mass))
    if not logs:
        return -math.inf
    top = max(logs)
    return top + math.log(sum(math.exp(x - top) for x in logs))


def rhs_product(
    tree: TreeParams,
    masses: CylinderMassTable,
    f: LevelFunction,
    base: Vertex,
    shape: JoinShape,
    pa: ExponentAssignment,
    k_constant: float,
) -> float:
    """``K`` times the product over slots of the level power sums to ``1/p``.

    A positive coexponent contributes the base cylinder mass to that power.
    Factors are combined in the log domain so large sampled exponents cannot
    overflow intermediate sums.
    """
    slots = shape_slots(shape, base.level)
    if len(slots) != pa.n_slots:
        raise ConfigurationError(
            f"exponent assignment has {pa.n_slots} slots, shape needs {len(slots)}"
        )
    log_total = 0.0
    for slot, p in zip(slots, pa.exponents):
        log_sum = _log_level_power_sum(tree, masses, f, base, slot.level, p)
        if log_sum == -math.inf:
            return 0.0
        log_total += log_sum / p
    if pa.coexponent > 0.0:
        base_mass = masses.mass(base)
        if base_mass == 0.0:
            return 0.0
        log_total += pa.coexponent * math.log(base_mass)
    return k_constant * math.exp(log_total)


# ---------------------------------------------------------------------------
# Constant regimes
# ---------------------------------------------------------------------------


class KGeneralResult(NamedTuple):
    value: int
    crude_bound: int


def _iter_nodes(shape: JoinShape):
    if isinstance(shape, ShapeLeaf):
        return
    yield shape
    for b in shape.branches:
        yield from _iter_nodes(b)


def k_general(shape: JoinShape, arity: int) -> KGeneralResult:
    """Product over distinct join nodes of ``(m-1)!/(m-d)!``; exact integers.

    Also returns the cruder bound ``(m-1)**(n-1)``.  Binary shapes give 1.
    """
    value = 1
    total_multiplicity = 0
    for node in _iter_nodes(shape):
        if node.degree > arity:
            raise ConfigurationError(
                f"join node with {node.degree} branches exceeds arity {arity}"
            )
        value *= math.factorial(arity - 1) // math.factorial(arity - node.degree)
        total_multiplicity += node.multiplicity
    return KGeneralResult(value, (arity - 1) ** total_multiplicity)


@dataclass(frozen=True)
class KBinaryResult:
    """Sharp binary constant and both readings of the halves condition."""

    value: float
    condition_met: bool  # at every join node
    top_condition_met: bool  # at the top join node only
    failing_nodes: tuple[tuple[int, ...], ...]


def k_binary(shape: JoinShape, pa: ExponentAssignment) -> KBinaryResult:
    """``2**-(n-1)`` when every branch reciprocal sum is at most one half.

    The condition is checked at every join node, not only the top one; for
    positive exponents the deeper checks follow from the top one, but both
    are reported.  When the condition fails the value falls back to the
    general binary constant 1.
    """
    for node in _iter_nodes(shape):
        if node.degree != 2:
            raise ConfigurationError("the sharp binary constant needs a binary shape")
    if pa.n_slots != shape.n_particles - 1:
        raise ConfigurationError(
            f"exponent assignment has {pa.n_slots} slots, shape needs "
            f"{shape.n_particles - 1}"
        )
    reciprocals = list(pa.reciprocals())
    cursor = iter(range(len(reciprocals)))
    failing: list[tuple[int, ...]] = []
    top_sums: list[float] = []

    def subtree_sum(node: JoinShape, path: tuple[int, ...]) -> float:
        if isinstance(node, ShapeLeaf):
            return 0.0
        own = sum(reciprocals[next(cursor)] for _ in range(node.multiplicity))
        branch_sums = [
            subtree_sum(branch, path + (j,)) for j, branch in enumerate(node.branches)
        ]
        if not path:
            top_sums.extend(branch_sums)
        if any(s > 0.5 + HALF_TOL for s in branch_sums):
            failing.append(path)
        return own + sum(branch_sums)

    subtree_sum(shape, ())
    condition_met = not failing
    top_condition_met = all(s <= 0.5 + HALF_TOL for s in top_sums)
    n_slots = shape.n_particles - 1
    value = 2.0 ** (-n_slots) if condition_met else 1.0
    return KBinaryResult(value, condition_met, top_condition_met, tuple(failing))


# ---------------------------------------------------------------------------
# Symmetric-sum constants K(m; a)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuirheadSpec:
    """Nonnegative exponent vector of a symmetric sum.

    The constant machinery needs ``s = sum(a) > 0`` (checked there); the
    symmetric sum itself is total, with the all-zero vector giving ``m!``.
    """

    a: tuple[float, ...]

    def __post_init__(self) -> None:
        a = tuple(float(x) for x in self.a)
        if not a:
            raise ConfigurationError("exponent vector must be nonempty")
        if any(not x >= 0.0 for x in a):
            raise ConfigurationError(f"exponents must be >= 0, got {a}")
        object.__setattr__(self, "a", a)

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def s(self) -> float:
        return sum(self.a)


def symmetric_sum(x: Sequence[float], spec: MuirheadSpec) -> float:
    """Exact sum over all ``m!`` permutations, with the ``0**0 = 1`` convention."""
    if len(x) != spec.m:
        raise ConfigurationError(f"need {spec.m} variables, got {len(x)}")
    xs = [float(v) for v in x]
    if any(not v >= 0.0 for v in xs):
        raise ConfigurationError(f"variables must be >= 0, got {xs}")
    total = 0.0
    for sigma in itertools.permutations(range(spec.m)):
        term = 1.0
        for i, j in enumerate(sigma):
            term *= _pow(xs[j], spec.a[i])
        total += term
    return total


@dataclass(frozen=True)
class MuirheadValue:
    """Closed-form constant when a case applies, otherwise the known bracket."""

    case: str  # "i" | "ii" | "iii" | "iv"
    exact: bool
    lower: float
    upper: float

    @property
    def value(self) -> float | None:
        return self.lower if self.exact else None


def muirhead_closed_form(spec: MuirheadSpec) -> MuirheadValue:
    m, s, a = spec.m, spec.s, spec.a
    if not s > 0.0:
        raise ConfigurationError("the constant needs a positive exponent sum")
    uniform = math.factorial(m) * m ** (-s)
    if s <= 1.0:
        return MuirheadValue("i", True, uniform, uniform)
    if all(ai >= (s - 1.0) / m for ai in a):
        return MuirheadValue("iii", True, uniform, uniform)
    if m == 2 and (a[0] - a[1]) ** 2 <= s:
        v = 2.0 ** (1.0 - s)
        return MuirheadValue("iv", True, v, v)
    return MuirheadValue("ii", False, uniform, float(math.factorial(m - 1)))


_DEFAULT_RESOLUTION = {1: 1, 2: 512, 3: 96, 4: 40, 5: 24}


@dataclass(frozen=True)
class MuirheadEstimate:
    """Numeric estimate of the symmetric-sum constant.

    ``value`` is the refined maximum over the probability simplex and is a
    rigorous lower bound for the true constant.  ``uncertainty`` is a
    certified radius from the grid's modulus of continuity: the true
    constant is at most ``value + uncertainty``.  A coarse resolution
    widens the radius; it never produces a silently wrong answer.
    """

    value: float
    maximizer: tuple[float, ...]
    uncertainty: float
    resolution: int


def muirhead_numeric(spec: MuirheadSpec, resolution: int | None = None) -> MuirheadEstimate:
    """Maximize the symmetric sum over the simplex by grid search plus refinement.

    Normalizing to the simplex is justified by degree-``s`` homogeneity:
    both sides of the defining inequality scale identically.
    """
    m = spec.m
    if m > 5:
        raise ConfigurationError("numeric estimation is limited to m <= 5")
    if not spec.s > 0.0:
        raise ConfigurationError("the constant needs a positive exponent sum")
    n_grid = int(resolution) if resolution is not None else _DEFAULT_RESOLUTION[m]
    if n_grid < 1:
        raise ConfigurationError(f"resolution must be >= 1, got {n_grid}")
    if m == 1:
        return MuirheadEstimate(1.0, (1.0,), 0.0, n_grid)

    points = np.array(list(_compositions(n_grid, m)), dtype=float) / n_grid
    extras = [np.full(m, 1.0 / m)]
    extras.extend(np.eye(m)[i] for i in range(m))
    for i, j in itertools.combinations(range(m), 2):
        x = np.zeros(m)
        x[i] = x[j] = 0.5
        extras.append(x)
    points = np.vstack([points, np.array(extras)])

    values = _symmetric_sum_grid(points, spec.a)
    order = np.argsort(values)[::-1]
    best_value = -math.inf
    best_x = points[order[0]]
    for idx in order[:3]:
        x, v = _compass_refine(points[idx], spec, 1.0 / n_grid)
        if v > best_value:
            best_value, best_x = v, x

    uncertainty = math.factorial(m) * sum(
        _continuity_step(1.0 / n_grid, ai) for ai in spec.a
    )
    return MuirheadEstimate(
        float(best_value), tuple(float(v) for v in best_x), uncertainty, n_grid
    )


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _symmetric_sum_grid(points: np.ndarray, a: tuple[float, ...]) -> np.ndarray:
    m = len(a)
    total = np.zeros(len(points))
    for sigma in itertools.permutations(range(m)):
        term = np.ones(len(points))
        for i, j in enumerate(sigma):
            if a[i] != 0.0:
                term = term * np.power(points[:, j], a[i])
        total += term
    return total


def _compass_refine(
    x0: np.ndarray, spec: MuirheadSpec, step: float, min_step: float = 1e-10
) -> tuple[np.ndarray, float]:
    """Pattern search along simplex edge directions with geometric step decay."""
    m = spec.m
    x = np.asarray(x0, dtype=float).copy()
    fx = symmetric_sum(x, spec)
    evals = 0
    while step > min_step and evals < 20000:
        improved = False
        for i, j in itertools.permutations(range(m), 2):
            if x[j] < step - 1e-15:
                continue
            y = x.copy()
            y[i] += step
            y[j] = max(y[j] - step, 0.0)
            fy = symmetric_sum(y, spec)
            evals += 1
            if fy > fx:
                x, fx = y, fy
                improved = True
        if not improved:
            step *= 0.5
    return x, fx


def _continuity_step(delta: float, a: float) -> float:
    # one-coordinate variation bound for x**a on [0, 1]
    if a == 0.0:
        return 0.0
    if a >= 1.0:
        return a * delta
    return delta**a


# ---------------------------------------------------------------------------
# The proof-recursion constant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeAccount:
    """Per-node conjugacy bookkeeping and the factor it contributes."""

    node_path: tuple[int, ...]
    level_offset: int  # levels below the base at which the node sits
    degree: int
    alpha_inv: tuple[float, ...]  # one per branch, canonical order
    beta_inv: float
    muirhead_case: str
    log_muirhead: float
    estimated: bool
    log_factor: float

    @property
    def factor(self) -> float:
        return math.exp(self.log_factor)


@dataclass(frozen=True)
class AlphaBetaLedger:
    entries: tuple[NodeAccount, ...]


@dataclass(frozen=True)
class KInductiveResult:
    value: float
    ledger: AlphaBetaLedger
    estimated: bool  # some node factor rests on the numeric estimator


def k_inductive(
    shape: JoinShape,
    pa: ExponentAssignment,
    arity: int,
    resolution: int | None = None,
) -> KInductiveResult:
    """Accumulate the recursion constant bottom-up over the shape.

    Each branch carries ``1/alpha = 1 - (reciprocal sum over its subtree
    slots)``, which is 1 for a single-particle branch.  A node with degree
    ``d`` has ``1/beta`` equal to its own slot reciprocals plus the
    inherited ``1/alpha`` and contributes::

        K(m; beta/alpha_1, ..., beta/alpha_d, 0, ..., 0)**(1/beta)
            * (m-1)!**(1 - 1/beta) / (m-d)!

    computed in the log domain.  Nodes falling in the bracket-only case use
    the numeric estimator clamped into the bracket and mark the result as
    estimated (not certified as an upper-bound constant).
    """
    m = arity
    if pa.n_slots != shape.n_particles - 1:
        raise ConfigurationError(
            f"exponent assignment has {pa.n_slots} slots, shape needs "
            f"{shape.n_particles - 1}"
        )
    reciprocals = list(pa.reciprocals())
    cursor = iter(range(len(reciprocals)))
    entries: list[NodeAccount] = []

    def walk(node: JoinShape, path: tuple[int, ...], level_offset: int) -> float:
        """Return the reciprocal sum over the subtree's slots."""
        if isinstance(node, ShapeLeaf):
            return 0.0
        if node.degree > m:
            raise ConfigurationError(
                f"join node with {node.degree} branches exceeds arity {m}"
            )
        level = level_offset + node.gap
        own = sum(reciprocals[next(cursor)] for _ in range(node.multiplicity))
        branch_sums = [
            walk(branch, path + (j,), level) for j, branch in enumerate(node.branches)
        ]
        alpha_inv = tuple(1.0 - s for s in branch_sums)
        subtree = own + sum(branch_sums)
        beta_inv = own + (1.0 - subtree)
        if not beta_inv > 0.0:
            raise ConfigurationError(
                f"nonpositive 1/beta at node {path}: exponents are not conjugate"
            )
        d = node.degree
        a_vec = tuple(ai / beta_inv for ai in alpha_inv) + (0.0,) * (m - d)
        mspec = MuirheadSpec(a_vec)
        closed = muirhead_closed_form(mspec)
        estimated = not closed.exact
        if closed.exact:
            log_k = _log_closed_form(closed.case, m, mspec.s)
        else:
            log_lower = _log_uniform_constant(m, mspec.s)
            log_upper = math.lgamma(m)  # log (m-1)!
            est = muirhead_numeric(mspec, resolution)
            log_est = math.log(est.value) if est.value > 0.0 else log_lower
            log_k = min(max(log_est, log_lower), log_upper)
        log_factor = (
            beta_inv * log_k
            + (1.0 - beta_inv) * math.lgamma(m)
            - math.lgamma(m - d + 1)
        )
        entries.append(
            NodeAccount(
                node_path=path,
                level_offset=level,
                degree=d,
                alpha_inv=alpha_inv,
                beta_inv=beta_inv,
                muirhead_case=closed.case,
                log_muirhead=log_k,
                estimated=estimated,
                log_factor=log_factor,
            )
        )
        return subtree

    if isinstance(shape, ShapeLeaf):
        return KInductiveResult(1.0, AlphaBetaLedger(()), False)
    walk(shape, (), 0)
    entries.reverse()  # ledger reads top-down; the walk appends children first
    total_log = sum(e.log_factor for e in entries)
    return KInductiveResult(
        math.exp(total_log),
        AlphaBetaLedger(tuple(entries)),
        any(e.estimated for e in entries),
    )


def _log_uniform_constant(m: int, s: float) -> float:
    return math.lgamma(m + 1) - s * math.log(m)


def _log_closed_form(case: str, m: int, s: float) -> float:
    if case in ("i", "iii"):
        return _log_uniform_constant(m, s)
    if case == "iv":
        return (1.0 - s) * math.log(2.0)
    raise ConfigurationError(f"case {case!r} has no closed form")


# ---------------------------------------------------------------------------
# The hyperbolic-cosine ratio
# ---------------------------------------------------------------------------


def cosh_ratio(r: float, q: float, theta: float) -> float:
    """``cosh((r-q) theta) / cosh(theta)**(r+q)``, evaluated in the log domain.

    At most 1 whenever ``(r-q)**2 <= r+q``, strictly below 1 for nonzero
    ``theta`` except on the degenerate family where the ratio is
    identically 1 (``q = 0`` with ``r in {0, 1}`` and symmetrically).
    """
    if r < 0.0 or q < 0.0:
        raise ConfigurationError(f"r and q must be >= 0, got {(r, q)}")
    log_ratio = _log_cosh((r - q) * theta) - (r + q) * _log_cosh(theta)
    if log_ratio > 700.0:
        return math.inf
    return math.exp(log_ratio)


def _log_cosh(x: float) -> float:
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)
