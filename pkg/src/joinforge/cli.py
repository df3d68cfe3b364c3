"""Command-line interface.

Every subcommand prints a JSON document on standard output (keys sorted,
floats in shortest round-trip form, so identical invocations are
byte-identical) and a short human summary on standard error when attached
to a terminal.  Exit status: 0 on success, 1 on an inequality violation or
validation failure, 2 on usage errors or malformed instance files.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import (
    MuirheadSpec,
    muirhead_closed_form,
    muirhead_numeric,
    validate_exponents,
)
from .energy import orbit_energy_bruteforce, orbit_energy_factorized
from .orbits import EnumerationGuardError, orbit_enumerate, orbit_size
from .tree import ConfigurationError
from .verify import (
    CampaignSpec,
    InstanceRanges,
    check_equality_case,
    check_inequality,
    fuzz_campaign,
    load_instance,
    parse_regime,
    reproduce_example,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _emit(payload, note: str | None = None) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    if note and sys.stderr.isatty():
        sys.stderr.write(note + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="joinforge",
        description="Orbit interaction energies on regular rooted trees and their bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("join-set", help="join points of an instance's configuration")
    ps.add_argument("instance")

    ps = sub.add_parser("orbit", help="orbit size or full enumeration")
    ps.add_argument("action", choices=["size", "enumerate"])
    ps.add_argument("instance")
    ps.add_argument("--guard", type=int, default=None)

    ps = sub.add_parser("energy", help="orbit energy of an instance")
    ps.add_argument("instance")
    ps.add_argument("--method", choices=["brute", "factorized"], default="factorized")
    ps.add_argument("--guard", type=int, default=None)
    ps.add_argument("--pairwise", action="store_true")

    ps = sub.add_parser("bound", help="constant and right-hand side for a regime")
    ps.add_argument("instance")
    ps.add_argument("--regime", default=None, help="general | binary-optimal | inductive | explicit=V")

    ps = sub.add_parser("kconst", help="symmetric-sum constant K(m; a)")
    ps.add_argument("--m", type=int, required=True)
    ps.add_argument("--a", type=float, nargs="+", required=True)
    ps.add_argument("--numeric", type=int, nargs="?", const=-1, default=None,
                    help="numeric estimate, optionally at a given grid resolution")

    ps = sub.add_parser("verify", help="check the inequality for an instance")
    ps.add_argument("instance")
    ps.add_argument("--method", choices=["brute", "factorized"], default="factorized")
    ps.add_argument("--rel-tol", type=float, default=1e-9)
    ps.add_argument("--guard", type=int, default=None)

    ps = sub.add_parser("equality-check", help="equality case for a binary instance's shape")
    ps.add_argument("instance")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--rel-tol", type=float, default=1e-9)

    ps = sub.add_parser("example", help="reproduce the worked four-particle example")
    ps.add_argument("--p", type=float, nargs=3, default=[3.0, 3.0, 3.0])

    ps = sub.add_parser("fuzz", help="seeded verification campaign")
    ps.add_argument("--seeds", default="0..1000", help="seed range A..B (B exclusive)")
    ps.add_argument("--m", type=int, nargs="+", default=[2, 3])
    ps.add_argument("--k", type=int, default=4)
    ps.add_argument("--n", type=int, default=6)
    ps.add_argument("--regime", default="general")
    ps.add_argument("--rel-tol", type=float, default=1e-9)
    ps.add_argument("--jobs", type=int, default=1)
    ps.add_argument("--csv", default=None, help="write per-seed ratios to this CSV path")

    return parser


def _seed_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ConfigurationError(f"seed range must look like A..B, got {text!r}")
    try:
        start, stop = int(lo), int(hi)
    except ValueError as exc:
        raise ConfigurationError(f"bad seed range {text!r}") from exc
    if stop < start:
        raise ConfigurationError(f"empty seed range {text!r}")
    return start, stop - start


def _cmd_join_set(args) -> int:
    inst = load_instance(args.instance)
    joins = {v.to_text(): r for v, r in sorted(inst.config.join_multiset().items())}
    levels = sorted(
        level for v, r in inst.config.join_multiset().items() for level in [v.level] * r
    )
    _emit({"joins": joins, "levels": levels, "total_multiplicity": sum(joins.values())})
    return EXIT_OK


def _cmd_orbit(args) -> int:
    inst = load_instance(args.instance)
    if args.action == "size":
        _emit({"size": orbit_size(inst.config)})
        return EXIT_OK
    members = [
        [p.to_text() for p in member.particles]
        for member in orbit_enumerate(inst.config, guard=args.guard)
    ]
    _emit({"count": len(members), "tuples": members})
    return EXIT_OK


def _cmd_energy(args) -> int:
    inst = load_instance(args.instance)
    if args.method == "brute":
        result = orbit_energy_bruteforce(
            inst.config, inst.weights, inst.f, guard=args.guard, pairwise=args.pairwise
        )
    else:
        result = orbit_energy_factorized(inst.config, inst.weights, inst.f)
    _emit({"value": result.value, "method": result.method, "terms": result.terms})
    return EXIT_OK


def _cmd_bound(args) -> int:
    inst = load_instance(args.instance)
    if args.regime is not None:
        regime, explicit = parse_regime(args.regime)
        inst = type(inst)(
            config=inst.config,
            weights=inst.weights,
            f=inst.f,
            exponents=inst.exponents,
            regime=regime,
            explicit_k=explicit if explicit is not None else inst.explicit_k,
            seed=inst.seed,
        )
    violation = validate_exponents(inst.shape, inst.exponents)
    if violation is not None:
        _emit({"error": violation.message, "constraint": violation.constraint})
        return EXIT_VIOLATION
    report = check_inequality(inst)
    _emit(
        {
            "K": report.k_constant,
            "regime": inst.regime,
            "rhs": report.rhs,
            "flags": list(report.flags),
            "join_levels": report.metadata["join_levels"],
        }
    )
    return EXIT_OK


def _cmd_kconst(args) -> int:
    spec = MuirheadSpec(tuple(args.a))
    if spec.m != args.m:
        raise ConfigurationError(f"--m {args.m} does not match {len(args.a)} exponents")
    closed = muirhead_closed_form(spec)
    payload: dict = {"case": closed.case, "exact": closed.exact, "s": spec.s}
    if closed.exact:
        payload["value"] = closed.value
    else:
        payload["lower"] = closed.lower
        payload["upper"] = closed.upper
    if args.numeric is not None:
        resolution = None if args.numeric == -1 else args.numeric
        estimate = muirhead_numeric(spec, resolution)
        payload["numeric"] = {
            "value": estimate.value,
            "maximizer": list(estimate.maximizer),
            "uncertainty": estimate.uncertainty,
            "resolution": estimate.resolution,
        }
    _emit(payload)
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    report = check_inequality(
        inst, rel_tol=args.rel_tol, method=args.method, guard=args.guard
    )
    _emit(report.to_json_dict(), note=f"ratio {report.ratio:.6g} pass={report.passed}")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_equality_check(args) -> int:
    inst = load_instance(args.instance)
    report = check_equality_case(
        inst.tree,
        inst.shape,
        inst.exponents.exponents,
        seed=args.seed,
        rel_tol=args.rel_tol,
    )
    _emit(report.to_json_dict())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_example(args) -> int:
    report = reproduce_example(tuple(args.p))
    _emit(report.to_json_dict())
    ok = report.report_displayed.passed and report.report_binary_optimal.passed
    return EXIT_OK if ok else EXIT_VIOLATION


def _cmd_fuzz(args) -> int:
    start, count = _seed_range(args.seeds)
    regime, _ = parse_regime(args.regime)
    ranges = InstanceRanges(
        arities=tuple(args.m),
        max_depth=args.k,
        max_particles=args.n,
        regime=regime,
    )
    summary = fuzz_campaign(
        CampaignSpec(
            seed_start=start,
            seed_count=count,
            ranges=ranges,
            rel_tol=args.rel_tol,
            jobs=args.jobs,
        )
    )
    if args.csv:
        summary.write_ratio_csv(args.csv)
    _emit(summary.to_json_dict())
    return EXIT_OK if summary.passed else EXIT_VIOLATION


_COMMANDS = {
    "join-set": _cmd_join_set,
    "orbit": _cmd_orbit,
    "energy": _cmd_energy,
    "bound": _cmd_bound,
    "kconst": _cmd_kconst,
    "verify": _cmd_verify,
    "equality-check": _cmd_equality_check,
    "example": _cmd_example,
    "fuzz": _cmd_fuzz,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EnumerationGuardError as exc:
        _emit({"error": str(exc), "estimate": exc.estimate})
        return EXIT_VIOLATION
    except ConfigurationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
