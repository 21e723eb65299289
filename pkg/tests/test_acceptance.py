"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance and runtime budget is asserted here.
"""

import random
import time
from fractions import Fraction

import pytest

from packbound.adversary import AItemGenerator, run_tree, synthesize_items
from packbound.algorithms import make_algorithm
from packbound.analysis import (
    bound_finite_t,
    certify_prices,
    check_weight_price_inequality,
    combination_identity_holds,
    multipliers,
    optimize_bound,
    price_table,
    rhs_identity_holds,
    stopping_labels,
    w_star_fraction,
)
from packbound.core import compute_stats
from packbound.inputs import ConstructionParams
from packbound.layered import CertificateViolation, LayeredContext
from packbound.optbounds import (
    construct_solution,
    ideal_opt_bound,
    opt_upper_bound,
)

F = Fraction
PARAMS = ConstructionParams(t=3, m=1)


def _report(criterion, status, detail=""):
    print(f"ACCEPTANCE {criterion}: {status} {detail}".rstrip())


def test_criterion_1_closed_form_optimum():
    t0 = time.time()
    res = optimize_bound()
    elapsed = time.time() - t0
    assert res.linear_residual_zero  # w* - (3 - 1.25 r*) == 0 exactly
    assert res.closing_residual_zero  # 35/6 - r*(8533/2352 + w*/7) == 0 exactly
    assert res.quadratic_residual_zero
    assert abs(res.r_decimal - F("1.5427809064729")) <= F(1, 10**12)
    assert abs(res.w_decimal - F("1.07152386690879")) <= F(1, 10**12)
    assert res.search_matches_algebra
    assert elapsed < 1.0
    _report(
        "1 (closed-form optimum)",
        "PASS",
        f"r*={float(res.r_decimal):.13f} w*={float(res.w_decimal):.14f} "
        f"in {elapsed:.3f}s",
    )


def test_criterion_2_price_certification():
    t0 = time.time()
    cert = certify_prices(3)
    elapsed = time.time() - t0
    expected = price_table(3)
    assert cert.table == expected
    assert cert.table["single"].const == 1
    assert cert.table["double"].const == 2
    assert (cert.table["type1"].const, cert.table["type1"].slope) == (5, 1)
    assert cert.table["type2"].const == F(48, 7)
    assert cert.table["type3"].const == 7
    assert cert.witnesses["type3"]
    assert cert.forbidden and all(c["infeasible"] for c in cert.forbidden)
    assert elapsed < 300
    _report(
        "2 (price certification t=3)",
        "PASS",
        f"{len(cert.forbidden)} forbidden combinations confirmed in {elapsed:.1f}s",
    )


def test_criterion_3_exact_identities():
    t0 = time.time()
    rng = random.Random(0)
    for t in range(3, 9):
        for _ in range(1000):
            nu = {lab: F(rng.randrange(0, 10**6)) for lab in stopping_labels(t)}
            assert combination_identity_holds(t, nu)
            n = F(rng.randrange(1, 10**9))
            nl = n * F(rng.randrange(0, 1001), 1000)
            assert rhs_identity_holds(t, n, nl)
    elapsed = time.time() - t0
    assert elapsed < 10
    _report(
        "3 (multiplier and coefficient identities)",
        "PASS",
        f"t=3..8 x 1000 random vectors in {elapsed:.1f}s",
    )


SUBJECTS = [
    ("next-fit", {}),
    ("first-fit", {}),
    ("best-fit", {}),
    ("harmonic", {"h": 7}),
    ("always-new-bin", {}),
    ("never-new-bin", {}),
    ("alternating", {}),
    ("seeded-random", {"seed": 0}),
]


@pytest.mark.parametrize("name,kwargs", SUBJECTS, ids=[s[0] for s in SUBJECTS])
def test_criterion_4_simulations(name, kwargs):
    t0 = time.time()
    algorithm = make_algorithm(name, **kwargs)
    transcript, report = run_tree(PARAMS, algorithm)
    elapsed = time.time() - t0

    # generator invariants, exact
    assert report.checks["gap_property"]
    assert report.checks["exponents_in_range"]
    assert report.checks["sizes_in_open_interval"]

    # weight equals price sum exactly, and respects the price-table bound
    stats = compute_stats(transcript)
    wp = check_weight_price_inequality(transcript, stats)
    assert wp.equality and wp.inequality and wp.per_bin_ok

    # ratio chain at w*: max ratio >= W / (sum of multiplier-weighted issued
    # optimum bounds) >= finite-t bound - 0.01
    w_ref = w_star_fraction()
    mult = dict(multipliers(3, w_ref))
    mult_opt = sum(mult[p.label] * p.opt_bound for p in report.stopping_points)
    middle = wp.total_weight.at(w_ref) / mult_opt
    finite = bound_finite_t(3, w_ref, F(report.n_large, PARAMS.n))
    assert report.max_ratio >= middle >= finite - F(1, 100)

    assert report.all_checks_pass, report.checks
    assert elapsed < 120
    _report(
        f"4 ({algorithm.name})",
        "PASS",
        f"max_ratio={float(report.max_ratio):.4f} n_large={report.n_large} "
        f"chain={float(middle):.4f}>={float(finite):.4f}-0.01 in {elapsed:.1f}s",
    )


def test_criterion_5_offline_constructions():
    t0 = time.time()
    n = PARAMS.n
    samples = sorted({0, n} | {round(i * n / 19) for i in range(1, 19)})
    assert len(samples) == 20 and samples[0] == 0 and samples[-1] == n
    labels = ["C3", "C2", "A", "B11", "B21", "B22", "B31", "B32"]
    trunk = {"C3", "C2"}
    visible = {
        "C3": {"C3"}, "C2": trunk, "A": trunk | {"A"},
        "B11": trunk | {"A", "B11"}, "B21": trunk | {"A", "B21"},
        "B22": trunk | {"A", "B21", "B22"}, "B31": trunk | {"A", "B31"},
        "B32": trunk | {"A", "B31", "B32"},
    }
    for n_large in samples:
        items, gamma, ctx = synthesize_items(PARAMS, n_large)
        for label in labels:
            point = [it for it in items.values() if it.batch in visible[label]]
            sol = construct_solution(label, point, 3, n, ctx, gamma=gamma)
            got = len(sol.bins)
            ideal = ideal_opt_bound(label, F(n), F(n_large))
            assert got <= ideal + 3, (label, n_large, got, ideal)
            assert got <= opt_upper_bound(label, 3, n, n_large)
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(
        "5 (offline constructions)",
        "PASS",
        f"8 points x {len(samples)} opener counts in {elapsed:.1f}s",
    )


def test_criterion_6_generator_exhaustive():
    t0 = time.time()
    total = 0
    for n in range(1, 9):
        for pattern in range(2**n):
            gen = AItemGenerator(n, 10)
            for bit in range(n):
                gen.next_exponent()
                gen.classify(bool((pattern >> bit) & 1))
            checks = gen.check_invariants()
            assert all(checks.values()), (n, pattern, checks)
            larges = gen.large_exponents()
            smalls = gen.small_exponents()
            if larges and smalls:
                # strict ratio above k, re-derived from exact rationals
                assert F(1, 10 ** max(larges)) > 10 * F(1, 10 ** min(smalls))
            total += 1
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _report(
        "6 (adaptive generator exhaustive)",
        "PASS",
        f"{total} classification patterns in {elapsed:.2f}s",
    )


def test_criterion_7_comparison_oracle():
    t0 = time.time()
    rng = random.Random(2024)
    ctx = LayeredContext(97)

    def rand_value():
        base = F(rng.randrange(-60, 61), rng.randrange(1, 30))
        atoms = {}
        for _ in range(rng.randrange(0, 4)):
            c = F(rng.randrange(-9, 10), rng.randrange(1, 10))
            if c:
                atoms[rng.randrange(1, 13)] = c
        return ctx.value(base, atoms)

    decided = 0
    for _ in range(100_000):
        x, y = rand_value(), rand_value()
        try:
            got = x.compare(y)
        except CertificateViolation:
            continue
        ex, ey = ctx.evaluate_exact(x), ctx.evaluate_exact(y)
        assert got == (ex > ey) - (ex < ey)
        decided += 1
    elapsed = time.time() - t0
    assert decided > 30_000
    assert elapsed < 10
    _report(
        "7 (comparison oracle equivalence)",
        "PASS",
        f"{decided} certified comparisons agree in {elapsed:.1f}s",
    )
