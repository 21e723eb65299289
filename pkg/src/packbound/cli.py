"""Command-line interface: simulate, verify, optimize.

Every subcommand emits one JSON document (to --out or stdout) that is
byte-stable for a fixed configuration.  Exit status 0 means every check in
the run passed; contract violations and failed checks exit nonzero with the
failing names on stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import adversary, analysis, optbounds, report
from .algorithms import STANDARD_ALGORITHMS, STRESS_ALGORITHMS, make_algorithm
from .core import OverflowRejection, compute_stats
from .inputs import ConstructionParams
from .layered import CertificateViolation

ALGORITHM_CHOICES = STANDARD_ALGORITHMS + STRESS_ALGORITHMS


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packbound",
        description="Adversarial lower-bound workbench for online bin packing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="play the input tree against one algorithm")
    sim.add_argument("--algorithm", required=True, choices=ALGORITHM_CHOICES)
    sim.add_argument("--t", type=int, default=3, help="number of trunk size classes")
    sim.add_argument("--m", type=int, default=1, help="scale multiplier (n = 6*7^t*m)")
    sim.add_argument("--h", type=int, default=7, help="class count for harmonic")
    sim.add_argument("--seed", type=int, default=0, help="seed for seeded-random")
    sim.add_argument("--w", type=_fraction_arg, default=None,
                     help="opener weight in [1, 1.5]; default is the optimum")
    sim.add_argument("--mode", choices=("snapshot", "replay"), default="snapshot")
    sim.add_argument("--no-constructions", action="store_true",
                     help="skip validating the offline packings (faster)")
    sim.add_argument("--out", default=None, help="path for the JSON report")
    sim.add_argument("--verbose", action="store_true")

    ver = sub.add_parser("verify", help="check every analytic claim at scale t")
    ver.add_argument("--t", type=int, default=3)
    ver.add_argument("--w", type=_fraction_arg, default=None)
    ver.add_argument("--samples", type=int, default=20,
                     help="opener counts to exercise the offline constructions at")
    ver.add_argument("--skip-constructions", action="store_true")
    ver.add_argument("--out", default=None)
    ver.add_argument("--verbose", action="store_true")

    opt = sub.add_parser("optimize", help="reproduce the closing max-min bound")
    opt.add_argument("--out", default=None)
    opt.add_argument("--verbose", action="store_true")
    return parser


def _validate_w(parser: argparse.ArgumentParser, w) -> None:
    if w is not None and not (Fraction(1) <= w <= Fraction(3, 2)):
        parser.error(f"--w must lie in [1, 1.5], got {w}")


def cmd_simulate(args, parser) -> int:
    _validate_w(parser, args.w)
    if args.t < 3:
        parser.error("--t must be at least 3")
    if args.m < 1:
        parser.error("--m must be at least 1")
    params = ConstructionParams(t=args.t, m=args.m)
    algorithm = make_algorithm(args.algorithm, h=args.h, seed=args.seed)
    try:
        transcript, adv = adversary.run_tree(
            params,
            algorithm,
            mode=args.mode,
            check_constructions=not args.no_constructions,
        )
    except (OverflowRejection, CertificateViolation, adversary.ReplayMismatch) as exc:
        print(f"simulation aborted: {exc}", file=sys.stderr)
        return 1
    stats = compute_stats(transcript)
    doc = report.simulation_report(params, transcript, stats, adv)
    text = report.dump_json(doc, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if args.verbose:
        for p in adv.stopping_points:
            print(
                f"{p.label}: alg {p.alg_cost}, opt <= {p.opt_bound}, "
                f"ratio {float(p.ratio):.6f}",
                file=sys.stderr,
            )
        print(f"max ratio {float(adv.max_ratio):.6f}", file=sys.stderr)
    failing = sorted(name for name, ok in adv.checks.items() if not ok)
    if failing:
        print("failed checks: " + ", ".join(failing), file=sys.stderr)
        return 1
    return 0


def _verify_checks(t: int, samples: int, skip_constructions: bool) -> dict:
    checks: dict[str, bool] = {}

    cert = analysis.certify_prices(t)
    checks["price_certification"] = cert.ok
    checks["trunk_weight_identity"] = all(
        analysis.trunk_weight_identity(tt) for tt in range(3, 13)
    )

    rng = random.Random(0)
    combo_ok = True
    rhs_ok = True
    for tt in range(3, 9):
        for _ in range(1000):
            nu = {lab: Fraction(rng.randrange(0, 10**6)) for lab in analysis.stopping_labels(tt)}
            combo_ok &= analysis.combination_identity_holds(tt, nu)
            n = Fraction(rng.randrange(1, 10**9))
            rhs_ok &= analysis.rhs_identity_holds(tt, n, n * Fraction(rng.randrange(0, 1001), 1000))
    checks["multiplier_combination_identity"] = combo_ok
    checks["rhs_coefficient_identity"] = rhs_ok

    first_ok = True
    for tt in range(3, 11):
        params_t = ConstructionParams(t=tt)
        value = optbounds.first_batch_opt_lower(tt, params_t.n, params_t.eps)
        first_ok &= value == Fraction(params_t.n, 6 * 7 ** (tt - 1))
        # worst admissible eps still clears the reciprocal threshold
        worst = Fraction(1, 2058**tt) - Fraction(1, 2058 ** (tt + 2))
        optbounds.first_batch_opt_lower(tt, params_t.n, worst)
    checks["first_batch_opt_lower"] = first_ok

    mult_ok = True
    for w in (Fraction(1), Fraction(5, 4), Fraction(3, 2)):
        mult_ok &= all(v >= 0 for _, v in analysis.multipliers(t, w))
    checks["multipliers_nonnegative"] = mult_ok

    opt_result = analysis.optimize_bound()
    checks["optimum_closed_forms"] = (
        opt_result.linear_residual_zero
        and opt_result.closing_residual_zero
        and opt_result.quadratic_residual_zero
        and opt_result.search_matches_algebra
    )

    if not skip_constructions:
        checks["offline_constructions"] = _constructions_over_n_large(t, samples)
    return checks


def sample_n_large_values(n: int, count: int = 20) -> list[int]:
    """Deterministic sample of opener counts including both extremes."""
    values = {0, n}
    for i in range(1, count - 1):
        values.add(round(i * n / (count - 1)))
    return sorted(values)


def _constructions_over_n_large(t: int, samples: int) -> bool:
    params = ConstructionParams(t=t)
    for n_large in sample_n_large_values(params.n, samples):
        items, gamma, ctx = adversary.synthesize_items(params, n_large)
        fake = _items_by_point(items, t)
        for label, point_items in fake.items():
            try:
                optbounds.construct_solution(
                    label, point_items, t, params.n, ctx, gamma=gamma
                )
            except optbounds.InfeasibleConstruction:
                return False
    return True


def _items_by_point(items: dict, t: int) -> dict:
    trunk = {f"C{i}" for i in range(2, t + 1)}
    visible = {}
    for j in range(t, 1, -1):
        visible[f"C{j}"] = {f"C{i}" for i in range(t, j - 1, -1)}
    visible["A"] = trunk | {"A"}
    visible["B11"] = trunk | {"A", "B11"}
    visible["B21"] = trunk | {"A", "B21"}
    visible["B22"] = trunk | {"A", "B21", "B22"}
    visible["B31"] = trunk | {"A", "B31"}
    visible["B32"] = trunk | {"A", "B31", "B32"}
    return {
        label: [it for it in items.values() if it.batch in batches]
        for label, batches in visible.items()
    }


def cmd_verify(args, parser) -> int:
    _validate_w(parser, args.w)
    if args.t < 3:
        parser.error("--t must be at least 3")
    try:
        checks = _verify_checks(args.t, args.samples, args.skip_constructions)
    except analysis.CertificationFailure as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return 1
    cert = analysis.certify_prices(args.t)
    doc = {
        "schema": report.SCHEMA_VERSION,
        "kind": "verification",
        "t": args.t,
        "checks": dict(sorted(checks.items())),
        "certification": report.certification_report(cert),
    }
    text = report.dump_json(doc, args.out)
    if args.out is None:
        sys.stdout.write(text)
    failing = sorted(name for name, ok in checks.items() if not ok)
    if failing:
        print("failed checks: " + ", ".join(failing), file=sys.stderr)
        return 1
    if args.verbose:
        print(f"all {len(checks)} verification checks passed", file=sys.stderr)
    return 0


def cmd_optimize(args, parser) -> int:
    result = analysis.optimize_bound()
    sweep = []
    for i in range(11):
        w = Fraction(1) + Fraction(i, 20)
        for nl in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
            sweep.append(
                [
                    report.frac_decimal(w, 4),
                    report.frac_decimal(nl, 4),
                    report.frac_decimal(analysis.bound_asymptotic(w, nl), 12),
                ]
            )
    doc = report.optimization_report(result, sweep)
    text = report.dump_json(doc, args.out)
    if args.out is None:
        sys.stdout.write(text)
    ok = (
        result.linear_residual_zero
        and result.closing_residual_zero
        and result.quadratic_residual_zero
        and result.search_matches_algebra
    )
    if args.verbose:
        print(f"r* = {report.frac_decimal(result.r_decimal, 14)}", file=sys.stderr)
        print(f"w* = {report.frac_decimal(result.w_decimal, 14)}", file=sys.stderr)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args, parser)
    if args.command == "verify":
        return cmd_verify(args, parser)
    return cmd_optimize(args, parser)


if __name__ == "__main__":
    sys.exit(main())
