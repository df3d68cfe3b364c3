"""Instances, inequality reports, equality checks, and fuzz campaigns.

An instance bundles everything the bound needs: a configuration on a tree,
leaf weights, a positive vertex function, exponents bound to the shape's
slots, and a constant regime.  Checking an instance produces a report with
the left side (orbit energy), the right side (constant times the slot
product), their ratio, and a pass flag at a relative tolerance.

The module also reproduces the worked four-particle example on the binary
depth-3 tree, including the two competing constants (the displayed product
``8 * 8**(1/p1) * 4**(1/p2) * 2**(1/p3)`` and the sharp ``1/8``), builds
deterministic random instances from seeds, and runs seeded campaigns that
must never find a violation.
"""

from __future__ import annotations

import csv
import json
import math
import statistics
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any

import numpy as np

from .bounds import (
    ExponentAssignment,
    k_binary,
    k_general,
    k_inductive,
    rhs_product,
    shape_slots,
    validate_exponents,
)
from .energy import (
    EnergyResult,
    orbit_energy_bruteforce,
    orbit_energy_factorized,
)
from .orbits import (
    Configuration,
    EnumerationGuardError,
    JoinShape,
    ShapeLeaf,
    extract_shape,
    realize_shape,
    shape_join_levels,
    shape_orbit_size,
)
from .tree import (
    ROOT,
    ConfigurationError,
    CylinderMassTable,
    LevelFunction,
    TreeParams,
    Vertex,
    WeightAssignment,
    cylinder_masses,
)

REGIMES = ("general", "binary_optimal", "inductive", "explicit")
DEFAULT_REL_TOL = 1e-9

FLAG_ESTIMATED_K = "estimated-K"
FLAG_CONDITION_RECURSIVE = "halves-condition-failure"
FLAG_CONDITION_TOP_ONLY = "halves-condition-top-only"
FLAG_ENUMERATION_GUARD = "enumeration-guard"
FLAG_INVALID_EXPONENTS = "invalid-exponents"
FLAG_SKIPPED = "skipped-condition-not-met"


@dataclass(frozen=True)
class Instance:
    """A full bound-checking problem: configuration, data, exponents, regime."""

    config: Configuration
    weights: WeightAssignment
    f: LevelFunction
    exponents: ExponentAssignment
    regime: str = "general"
    explicit_k: float | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ConfigurationError(
                f"regime must be one of {REGIMES}, got {self.regime!r}"
            )
        if self.regime == "explicit" and self.explicit_k is None:
            raise ConfigurationError("explicit regime needs a constant value")
        if self.weights.tree != self.config.tree or self.f.tree != self.config.tree:
            raise ConfigurationError("weights and vertex function must share the tree")

    @property
    def tree(self) -> TreeParams:
        return self.config.tree

    @property
    def base(self) -> Vertex:
        return self.config.base

    @cached_property
    def shape(self) -> JoinShape:
        return extract_shape(self.config)

    @cached_property
    def masses(self) -> CylinderMassTable:
        return cylinder_masses(self.tree, self.weights)

    def to_json_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "m": self.tree.arity,
            "k": self.tree.depth,
            "base": self.base.to_text(),
            "config": [list(p.word) for p in self.config.particles],
            "mu": {v.to_text(): w for v, w in sorted(self.weights.leaf_weights.items())},
            "f": {v.to_text(): x for v, x in sorted(self.f.values.items())},
            "p": list(self.exponents.exponents),
            "regime": self.regime,
        }
        if self.exponents.coexponent:
            data["coexponent"] = self.exponents.coexponent
        if self.explicit_k is not None:
            data["K"] = self.explicit_k
        if self.seed is not None:
            data["seed"] = self.seed
        return data

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "Instance":
        if not isinstance(data, dict):
            raise ConfigurationError("instance document must be a JSON object")
        tree = TreeParams(
            _field(data, "m", int), _field(data, "k", int)
        )
        base = _vertex_field(data.get("base", ""), "base")
        raw_config = _field(data, "config", list)
        particles = []
        for i, entry in enumerate(raw_config):
            particles.append(_vertex_field(entry, f"config[{i}]"))
        config = Configuration(tree, base, tuple(particles))
        weights = WeightAssignment.from_mapping(
            tree, _vertex_map(data.get("mu", {}), "mu"), default=1.0
        )
        f = LevelFunction.from_mapping(
            tree, _vertex_map(data.get("f", {}), "f"), default=1.0
        )
        p_list = [float(x) for x in _field(data, "p", list)]
        slot_map = data.get("slot_assignment")
        exponents = _apply_slot_assignment(p_list, slot_map)
        coexponent = float(data.get("coexponent", 0.0))
        regime, explicit_k = parse_regime(
            data.get("regime", "general"), data.get("K")
        )
        seed = data.get("seed")
        return cls(
            config=config,
            weights=weights,
            f=f,
            exponents=ExponentAssignment(tuple(exponents), coexponent),
            regime=regime,
            explicit_k=explicit_k,
            seed=int(seed) if seed is not None else None,
        )


def _field(data: dict, name: str, caster) -> Any:
    if name not in data:
        raise ConfigurationError(f"instance field {name!r} is missing")
    try:
        return caster(data[name])
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"instance field {name!r}: {exc}") from exc


def _vertex_field(raw: Any, where: str) -> Vertex:
    try:
        if isinstance(raw, str):
            return Vertex.from_text(raw)
        return Vertex.from_symbols(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"instance field {where!r}: {exc}") from exc


def _vertex_map(raw: Any, where: str) -> dict[Vertex, float]:
    if not isinstance(raw, dict):
        raise ConfigurationError(f"instance field {where!r} must be an object")
    out: dict[Vertex, float] = {}
    for key, value in raw.items():
        try:
            out[Vertex.from_text(key)] = float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"instance field {where!r}[{key!r}]: {exc}") from exc
    return out


def _apply_slot_assignment(p_list: list[float], slot_map: Any) -> list[float]:
    if slot_map is None:
        return p_list
    if not isinstance(slot_map, dict):
        raise ConfigurationError("instance field 'slot_assignment' must be an object")
    out = list(p_list)
    for slot_key, p_index in slot_map.items():
        try:
            slot = int(slot_key)
            idx = int(p_index)
            out[slot] = p_list[idx]
        except (TypeError, ValueError, IndexError) as exc:
            raise ConfigurationError(
                f"instance field 'slot_assignment'[{slot_key!r}]: {exc}"
            ) from exc
    return out


def parse_regime(raw: Any, explicit_value: Any = None) -> tuple[str, float | None]:
    """Normalize a regime spelling; 'explicit=V' or an explicit 'K' field."""
    if not isinstance(raw, str):
        raise ConfigurationError(f"regime must be a string, got {raw!r}")
    name, sep, tail = raw.strip().partition("=")
    name = name.replace("-", "_")
    if name == "explicit":
        if sep:
            try:
                return "explicit", float(tail)
            except ValueError as exc:
                raise ConfigurationError(f"bad explicit constant {tail!r}") from exc
        if explicit_value is None:
            raise ConfigurationError("explicit regime needs 'K' or 'explicit=VALUE'")
        return "explicit", float(explicit_value)
    if sep or name not in REGIMES:
        raise ConfigurationError(f"unknown regime {raw!r}")
    return name, None


def load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigurationError(f"cannot read instance file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed JSON in {path!r} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    return Instance.from_json_dict(data)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Report:
    """Outcome of one inequality check."""

    lhs: float
    rhs: float
    k_constant: float
    ratio: float
    passed: bool
    flags: tuple[str, ...] = ()
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "lhs": _num_out(self.lhs),
            "rhs": _num_out(self.rhs),
            "K": _num_out(self.k_constant),
            "ratio": _num_out(self.ratio),
            "pass": self.passed,
            "flags": list(self.flags),
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> "Report":
        return cls(
            lhs=_num_in(data["lhs"]),
            rhs=_num_in(data["rhs"]),
            k_constant=_num_in(data["K"]),
            ratio=_num_in(data["ratio"]),
            passed=bool(data["pass"]),
            flags=tuple(data.get("flags", ())),
            metadata=dict(data.get("metadata", {})),
        )


def _num_out(x: float) -> float | None:
    return None if x != x else x  # NaN becomes null in JSON


def _num_in(x: Any) -> float:
    return math.nan if x is None else float(x)


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0.0:
        return lhs / rhs
    return 1.0 if lhs == 0.0 else math.inf


def resolve_constant(inst: Instance) -> tuple[float, tuple[str, ...]]:
    """Constant for the instance's regime plus any advisory flags."""
    flags: list[str] = []
    if inst.regime == "general":
        k = float(k_general(inst.shape, inst.tree.arity).value)
    elif inst.regime == "binary_optimal":
        kb = k_binary(inst.shape, inst.exponents)
        k = kb.value
        if not kb.condition_met:
            flags.append(FLAG_CONDITION_RECURSIVE)
            if kb.top_condition_met:
                flags.append(FLAG_CONDITION_TOP_ONLY)
    elif inst.regime == "inductive":
        ki = k_inductive(inst.shape, inst.exponents, inst.tree.arity)
        k = ki.value
        if ki.estimated:
            flags.append(FLAG_ESTIMATED_K)
    else:  # explicit
        k = float(inst.explicit_k)  # type: ignore[arg-type]
    return k, tuple(flags)


def check_inequality(
    inst: Instance,
    rel_tol: float = DEFAULT_REL_TOL,
    method: str = "factorized",
    guard: int | None = None,
    pairwise: bool = False,
) -> Report:
    """Evaluate both sides of the bound and report the outcome.

    The left side uses the factorized evaluator unless brute force is
    requested and its enumeration fits the guard; a guard refusal is flagged
    and falls back to the factorized path.  Invalid exponents produce a
    failing report carrying the violation instead of raising.
    """
    violation = validate_exponents(inst.shape, inst.exponents)
    metadata: dict[str, Any] = {
        "seed": inst.seed,
        "shape": inst.shape.serialize(),
        "join_levels": shape_join_levels(inst.shape, inst.base.level),
        "regime": inst.regime,
    }
    if violation is not None:
        return Report(
            lhs=math.nan,
            rhs=math.nan,
            k_constant=math.nan,
            ratio=math.nan,
            passed=False,
            flags=(f"{FLAG_INVALID_EXPONENTS}:{violation.constraint}",),
            metadata={**metadata, "violation": violation.message},
        )

    k_constant, flags = resolve_constant(inst)
    flags = list(flags)

    energy: EnergyResult
    if method in ("brute", "bruteforce"):
        try:
            energy = orbit_energy_bruteforce(
                inst.config, inst.weights, inst.f, guard=guard, pairwise=pairwise
            )
        except EnumerationGuardError:
            flags.append(FLAG_ENUMERATION_GUARD)
            energy = orbit_energy_factorized(inst.config, inst.weights, inst.f)
    elif method == "factorized":
        energy = orbit_energy_factorized(inst.config, inst.weights, inst.f)
    else:
        raise ConfigurationError(f"unknown energy method {method!r}")

    rhs = rhs_product(
        inst.tree, inst.masses, inst.f, inst.base, inst.shape, inst.exponents, k_constant
    )
    lhs = energy.value
    metadata["method"] = energy.method
    metadata["orbit_terms"] = energy.terms
    return Report(
        lhs=lhs,
        rhs=rhs,
        k_constant=k_constant,
        ratio=_ratio(lhs, rhs),
        passed=lhs <= rhs * (1.0 + rel_tol),
        flags=tuple(flags),
        metadata=metadata,
    )


def check_equality_case(
    tree: TreeParams,
    shape: JoinShape,
    exponents: tuple[float, ...] | list[float],
    seed: int = 0,
    rel_tol: float = DEFAULT_REL_TOL,
) -> Report:
    """Verify the equality case of the sharp binary constant.

    Builds the instance with constant leaf weights and a level-constant
    vertex function (random positive level values from ``seed``), then
    requires the two sides to agree to ``rel_tol``; ``passed`` means the
    ratio equals 1 within tolerance.  When the halves condition fails the
    check is skipped with a reason rather than reported as a failure.
    """
    if tree.arity != 2:
        raise ConfigurationError("the equality case is specific to binary trees")
    pa = ExponentAssignment(tuple(exponents))
    config = realize_shape(tree, ROOT, shape)
    kb = k_binary(shape, pa)
    metadata: dict[str, Any] = {
        "seed": seed,
        "shape": shape.serialize(),
        "join_levels": shape_join_levels(shape, 0),
    }
    if not kb.condition_met:
        return Report(
            lhs=math.nan,
            rhs=math.nan,
            k_constant=math.nan,
            ratio=math.nan,
            passed=True,
            flags=(FLAG_SKIPPED,),
            metadata={**metadata, "reason": "halves condition not satisfied"},
        )
    rng = np.random.default_rng(seed)
    level_values = [float(10.0 ** rng.uniform(-1.0, 1.0)) for _ in range(tree.depth + 1)]
    inst = Instance(
        config=config,
        weights=WeightAssignment.constant(tree, 1.0),
        f=LevelFunction.by_level(tree, level_values),
        exponents=pa,
        regime="binary_optimal",
        seed=seed,
    )
    report = check_inequality(inst, rel_tol=rel_tol)
    equal = abs(report.ratio - 1.0) <= rel_tol
    return replace(
        report,
        passed=equal,
        metadata={**report.metadata, "f_levels": level_values},
    )


# ---------------------------------------------------------------------------
# The worked four-particle example
# ---------------------------------------------------------------------------

FLAG_DISPLAYED_NOT_TIGHT = "displayed-constant-not-tight"
FLAG_BINARY_OPTIMAL_TIGHT = "binary-optimal-tight"


@dataclass(frozen=True)
class ExampleReport:
    """Reproduction of the four-particle example on the binary depth-3 tree."""

    orbit_count: int
    join_points: dict[str, int]
    displayed_constant: float
    report_displayed: Report
    report_binary_optimal: Report
    tight_regime: str
    flags: tuple[str, ...]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "orbit_count": self.orbit_count,
            "join_points": dict(self.join_points),
            "displayed_constant": self.displayed_constant,
            "report_displayed": self.report_displayed.to_json_dict(),
            "report_binary_optimal": self.report_binary_optimal.to_json_dict(),
            "tight_regime": self.tight_regime,
            "flags": list(self.flags),
        }


def worked_example_configuration() -> Configuration:
    tree = TreeParams(2, 3)
    particles = tuple(
        Vertex.from_symbols(w) for w in ((1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 1, 2))
    )
    return Configuration(tree, ROOT, particles)


def reproduce_example(
    p: tuple[float, float, float] = (3.0, 3.0, 3.0),
    rel_tol: float = DEFAULT_REL_TOL,
) -> ExampleReport:
    """Check the four-particle example under both published constants.

    With unit weights and a unit vertex function the sharp constant 1/8
    attains equality, while the displayed product constant
    ``8 * 8**(1/p1) * 4**(1/p2) * 2**(1/p3)`` holds with room to spare; the
    report records which one is tight at this symmetric point.
    """
    config = worked_example_configuration()
    tree = config.tree
    shape = extract_shape(config)
    joins = {v.to_text(): r for v, r in sorted(config.join_multiset().items())}
    pa = ExponentAssignment(tuple(float(x) for x in p))
    levels = [slot.level for slot in shape_slots(shape, 0)]
    displayed = 8.0 * math.prod(
        (2.0 ** (tree.depth - level)) ** (1.0 / pe)
        for level, pe in zip(levels, pa.exponents)
    )
    weights = WeightAssignment.constant(tree, 1.0)
    f = LevelFunction.constant(tree, 1.0)
    report_displayed = check_inequality(
        Instance(config, weights, f, pa, regime="explicit", explicit_k=displayed),
        rel_tol=rel_tol,
    )
    report_binary = check_inequality(
        Instance(config, weights, f, pa, regime="binary_optimal"), rel_tol=rel_tol
    )
    flags: list[str] = []
    if report_displayed.ratio < 1.0 - rel_tol:
        flags.append(FLAG_DISPLAYED_NOT_TIGHT)
    binary_tight = abs(report_binary.ratio - 1.0) <= rel_tol
    if binary_tight:
        flags.append(FLAG_BINARY_OPTIMAL_TIGHT)
    return ExampleReport(
        orbit_count=shape_orbit_size(shape, tree.arity),
        join_points=joins,
        displayed_constant=displayed,
        report_displayed=report_displayed,
        report_binary_optimal=report_binary,
        tight_regime="binary_optimal" if binary_tight else "displayed",
        flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# Random instances and campaigns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceRanges:
    """Sampling ranges for seeded random instances."""

    arities: tuple[int, ...] = (2, 3)
    max_depth: int = 4
    max_particles: int = 6
    weight_low: float = 1e-3
    weight_high: float = 1e3
    zero_weight_prob: float = 0.05
    f_low: float = 1e-3
    f_high: float = 1e3
    regime: str = "general"

    def __post_init__(self) -> None:
        if not self.arities or any(m < 2 for m in self.arities):
            raise ConfigurationError("arities must be integers >= 2")
        if self.max_depth < 1:
            raise ConfigurationError("max_depth must be >= 1")
        if self.max_particles < 2:
            raise ConfigurationError("max_particles must be >= 2")
        if self.regime not in ("general", "binary_optimal", "inductive"):
            raise ConfigurationError(
                f"campaigns sample general, binary_optimal or inductive instances, "
                f"not {self.regime!r}"
            )
        if self.regime == "binary_optimal" and set(self.arities) != {2}:
            raise ConfigurationError("the binary-optimal regime samples binary trees only")
        if not (0.0 < self.weight_low <= self.weight_high):
            raise ConfigurationError("weight range must satisfy 0 < low <= high")
        if not (0.0 < self.f_low <= self.f_high):
            raise ConfigurationError("f range must satisfy 0 < low <= high")


def random_instance(seed: int, ranges: InstanceRanges = InstanceRanges()) -> Instance:
    """Deterministic instance from a seed: same seed, same instance.

    Particles are rejection-sampled distinct leaves; weights are log-uniform
    with occasional exact zeros; the vertex function is log-uniform; the
    exponent reciprocals are sampled on the simplex and inverted (or split
    by branch budgets when the binary-optimal regime is requested, so the
    halves condition holds by construction).
    """
    rng = np.random.default_rng(seed)
    m = int(ranges.arities[int(rng.integers(0, len(ranges.arities)))])
    k = int(rng.integers(1, ranges.max_depth + 1))
    cap = min(ranges.max_particles, m**k)
    if cap < 2:
        raise ConfigurationError(f"ranges cannot host two distinct leaves (cap {cap})")
    n = int(rng.integers(2, cap + 1))
    tree = TreeParams(m, k)

    chosen: list[Vertex] = []
    seen: set[tuple[int, ...]] = set()
    while len(chosen) < n:
        word = tuple(int(s) for s in rng.integers(1, m + 1, size=k))
        if word not in seen:
            seen.add(word)
            chosen.append(Vertex(word))
    config = Configuration(tree, ROOT, tuple(chosen))

    w_lo, w_hi = math.log10(ranges.weight_low), math.log10(ranges.weight_high)
    mu: dict[Vertex, float] = {}
    for leaf in tree.leaves():
        if rng.random() < ranges.zero_weight_prob:
            mu[leaf] = 0.0
        else:
            mu[leaf] = float(10.0 ** rng.uniform(w_lo, w_hi))
    weights = WeightAssignment(tree, mu)

    f_lo, f_hi = math.log10(ranges.f_low), math.log10(ranges.f_high)
    f = LevelFunction(
        tree, {v: float(10.0 ** rng.uniform(f_lo, f_hi)) for v in tree.vertices()}
    )

    if ranges.regime == "binary_optimal":
        exponents = _binary_optimal_exponents(extract_shape(config), rng)
    else:
        reciprocals = np.clip(rng.dirichlet(np.ones(n - 1)), 1e-12, None)
        reciprocals = reciprocals / reciprocals.sum()
        exponents = ExponentAssignment(tuple(float(1.0 / q) for q in reciprocals))

    return Instance(
        config=config,
        weights=weights,
        f=f,
        exponents=exponents,
        regime=ranges.regime,
        seed=seed,
    )


def _binary_optimal_exponents(
    shape: JoinShape, rng: np.random.Generator
) -> ExponentAssignment:
    """Slot reciprocals with both top branch budgets capped below one half."""
    if isinstance(shape, ShapeLeaf):
        raise ConfigurationError("need at least two particles for exponent slots")
    counts = [branch.n_particles - 1 for branch in shape.branches]
    budgets = [
        float(rng.uniform(0.05, 0.495)) if t > 0 else 0.0 for t in counts
    ]
    reciprocals: list[float] = [1.0 - sum(budgets)]  # the top node's single slot
    for t, budget in zip(counts, budgets):
        if t == 0:
            continue
        parts = np.clip(rng.dirichlet(np.ones(t)), 1e-12, None)
        parts = parts * (budget / parts.sum())
        reciprocals.extend(float(x) for x in parts)
    return ExponentAssignment(tuple(1.0 / q for q in reciprocals))


@dataclass(frozen=True)
class CampaignSpec:
    """Seed range and settings for a verification campaign."""

    seed_start: int = 0
    seed_count: int = 10_000
    ranges: InstanceRanges = InstanceRanges()
    rel_tol: float = DEFAULT_REL_TOL
    jobs: int = 1


@dataclass(frozen=True)
class SeedResult:
    seed: int
    ratio: float
    passed: bool
    flags: tuple[str, ...]
    positive_weights: bool


@dataclass
class CampaignSummary:
    """Aggregated campaign outcome; independent of how seeds were sharded."""

    seed_start: int
    seed_count: int
    count: int
    violations: list[dict[str, Any]]
    min_ratio: float
    median_ratio: float
    min_ratio_positive_weights: float | None
    flag_counts: dict[str, int]
    results: list[SeedResult]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "seed_start": self.seed_start,
            "seed_count": self.seed_count,
            "count": self.count,
            "pass": self.passed,
            "violations": self.violations,
            "min_ratio": _num_out(self.min_ratio),
            "median_ratio": _num_out(self.median_ratio),
            "min_ratio_positive_weights": (
                None
                if self.min_ratio_positive_weights is None
                else _num_out(self.min_ratio_positive_weights)
            ),
            "flag_counts": dict(self.flag_counts),
        }

    def write_ratio_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["seed", "ratio"])
            for result in self.results:
                writer.writerow([result.seed, repr(result.ratio)])


def _evaluate_seed(args: tuple[int, InstanceRanges, float]) -> tuple[SeedResult, dict | None]:
    seed, ranges, rel_tol = args
    inst = random_instance(seed, ranges)
    report = check_inequality(inst, rel_tol=rel_tol)
    positive = all(w > 0.0 for w in inst.weights.leaf_weights.values())
    violation = None
    if not report.passed:
        violation = {
            "seed": seed,
            "ratio": _num_out(report.ratio),
            "report": report.to_json_dict(),
            "instance": inst.to_json_dict(),
        }
    return (
        SeedResult(seed, report.ratio, report.passed, report.flags, positive),
        violation,
    )


def fuzz_campaign(spec: CampaignSpec) -> CampaignSummary:
    """Run the campaign over the seed range; workers share nothing."""
    seeds = range(spec.seed_start, spec.seed_start + spec.seed_count)
    tasks = [(seed, spec.ranges, spec.rel_tol) for seed in seeds]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            outcomes = list(pool.map(_evaluate_seed, tasks, chunksize=64))
    else:
        outcomes = [_evaluate_seed(task) for task in tasks]

    results = sorted((r for r, _ in outcomes), key=lambda r: r.seed)
    violations = [v for _, v in outcomes if v is not None]
    violations.sort(key=lambda v: v["seed"])
    ratios = [r.ratio for r in results]
    positive_ratios = [r.ratio for r in results if r.positive_weights]
    flag_counts = Counter(flag for r in results for flag in r.flags)
    return CampaignSummary(
        seed_start=spec.seed_start,
        seed_count=spec.seed_count,
        count=len(results),
        violations=violations,
        min_ratio=min(ratios) if ratios else math.nan,
        median_ratio=statistics.median(ratios) if ratios else math.nan,
        min_ratio_positive_weights=min(positive_ratios) if positive_ratios else None,
        flag_counts=dict(flag_counts),
        results=results,
    )
