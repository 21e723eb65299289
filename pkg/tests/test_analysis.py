"""Weights, bin types, prices, identities, and the closing optimization."""

import random
from fractions import Fraction

import pytest

from packbound.analysis import (
    AffineW,
    QuadraticNumber,
    SQRT_ARG,
    R_STAR,
    W_STAR,
    bound_asymptotic,
    bound_finite_t,
    certify_prices,
    classify_bin,
    combination_identity_holds,
    ideal_total_weight,
    item_weight,
    multiplier_table,
    multipliers,
    optimize_bound,
    price_table,
    realized_price,
    rhs_identity_holds,
    stopping_labels,
    trunk_weight_identity,
    w_star_fraction,
)
from packbound.core import Item
from packbound.layered import LayeredContext

F = Fraction


def test_trunk_weight_identity_range():
    for t in range(3, 13):
        assert trunk_weight_identity(t), t


def test_item_weights_at_t3():
    assert item_weight("C3", None, 3) == AffineW(F(1, 42))
    assert item_weight("C2", None, 3) == AffineW(F(1, 7))
    assert item_weight("A", True, 3) == AffineW(F(0), F(1))
    assert item_weight("A", False, 3) == AffineW(F(1))
    assert item_weight("B31", None, 3) == AffineW(F(1))


def test_classify_bin():
    assert classify_bin(["C2", "B11"], 3) == "type2"
    assert classify_bin(["C3", "C2", "A"], 3) == "type3"
    assert classify_bin(["A", "B11", "B21", "B22", "B31", "B31"], 3) == "type1"
    assert classify_bin(["B21", "B22"], 3) == "double"
    assert classify_bin(["B31"], 3) == "double"
    assert classify_bin(["B32"], 3) == "single"
    assert classify_bin(["B11"], 3) == "single"


def _mk_items(specs, ctx):
    out = {}
    for i, (batch, large) in enumerate(specs):
        branch = {"B11": "branch1", "B21": "branch2", "B22": "branch2",
                  "B31": "branch3", "B32": "branch3"}.get(batch, "trunk")
        out[i] = Item(i, batch, ctx.rational(F(1, 100)), branch, large)
    return out


def test_realized_price_example_bin():
    # opener + one B11 + one B21 + one B22 + two B31 across the continuations
    ctx = LayeredContext(10**6)
    items = _mk_items(
        [("A", True), ("B11", None), ("B21", None), ("B22", None),
         ("B31", None), ("B31", None)],
        ctx,
    )
    assert realized_price(items.keys(), items, 3) == AffineW(F(5), F(1))


def test_realized_price_full_bin_of_smallest():
    ctx = LayeredContext(10**6)
    items = _mk_items([("C3", None)] * 294, ctx)
    assert realized_price(items.keys(), items, 3) == AffineW(F(7))


def test_price_table_values():
    table = price_table(3)
    assert table["single"] == AffineW(F(1))
    assert table["double"] == AffineW(F(2))
    assert table["type1"] == AffineW(F(5), F(1))
    assert table["type2"] == AffineW(F(48, 7))
    assert table["type3"] == AffineW(F(7))
    table4 = price_table(4)
    assert table4["type3"] == AffineW(F(342, 49))
    assert table4["type4"] == AffineW(F(7))


def test_multipliers_t3():
    values = dict(multipliers(3, F(5, 4)))
    assert values == {
        "C3": F(1, 7),
        "C2": F(13, 7) - F(5, 4),
        "A": F(5, 4),
        "B11": 1, "B21": 1, "B22": 1, "B31": 1, "B32": 1,
    }
    # boundary w = 1.5 keeps the second trunk multiplier positive
    assert dict(multipliers(3, F(3, 2)))["C2"] == F(5, 14)
    with pytest.raises(ValueError):
        multipliers(3, F(8, 5))


def test_combination_identity_random():
    rng = random.Random(1)
    for t in range(3, 9):
        for _ in range(60):
            nu = {lab: F(rng.randrange(0, 10**6)) for lab in stopping_labels(t)}
            assert combination_identity_holds(t, nu), t


def test_rhs_identity_random():
    rng = random.Random(2)
    for t in range(3, 9):
        for _ in range(60):
            n = F(rng.randrange(1, 10**9), rng.randrange(1, 100))
            nl = n * F(rng.randrange(0, 1001), 1000)
            assert rhs_identity_holds(t, n, nl), t


def test_ideal_total_weight_matches_batch_sum():
    rng = random.Random(3)
    for _ in range(40):
        n = F(rng.randrange(1, 10**6))
        nl = n * F(rng.randrange(0, 101), 100)
        direct = (
            AffineW(n / 6)
            + AffineW(F(0), F(1)) * nl
            + AffineW(n - nl)
            + AffineW(n / 3)
            + AffineW(2 * n)
            + AffineW(7 * (n - nl) / 6)
            + AffineW((7 * n - 5 * nl) / 6)
        )
        assert direct == ideal_total_weight(n, nl)


def test_bound_denominator_identity():
    # the finite-t denominator converges onto the closing constant
    assert F(2133, 588) + F(1, 2352) == F(8533, 2352)
    w, nl = F(11, 10), F(1, 3)
    for t in range(3, 12):
        finite = bound_finite_t(t, w, nl)
        asym = bound_asymptotic(w, nl)
        assert finite < asym
        assert bound_finite_t(t + 1, w, nl) > finite


def test_bound_flat_at_w_star():
    w = w_star_fraction()
    values = {bound_asymptotic(w, nl) for nl in (F(0), F(1, 4), F(1, 2), F(1))}
    spread = max(values) - min(values)
    assert spread < F(1, 10**30)


def test_quadratic_number_arithmetic():
    x = QuadraticNumber(F(2), F(3), 5)
    assert x * x == QuadraticNumber(F(49), F(12), 5)
    assert (x - x).is_zero()
    assert x.compare_rational(F(8)) > 0  # 2 + 3*sqrt(5) = 8.708...
    assert x.compare_rational(F(9)) < 0
    y = QuadraticNumber(F(-1), F(1), 4)  # not a true radical, still exact: -1 + 2
    assert y.compare_rational(F(1)) == 0


def test_closed_form_constants():
    assert R_STAR.compare_rational(F(15427, 10000)) > 0
    assert R_STAR.compare_rational(F(15428, 10000)) < 0
    assert W_STAR.compare_rational(F(1)) > 0
    assert W_STAR.compare_rational(F(3, 2)) < 0
    # the defining quadratic annihilates the ratio constant
    assert (R_STAR * R_STAR * 420 - R_STAR * 9541 + F(13720)).is_zero()
    # and the two constants are linearly locked together
    assert (W_STAR - (QuadraticNumber(F(3), F(0), SQRT_ARG) - R_STAR * F(5, 4))).is_zero()


def test_optimize_bound_results():
    res = optimize_bound()
    assert res.linear_residual_zero
    assert res.closing_residual_zero
    assert res.quadratic_residual_zero
    assert res.flat_in_nl
    assert res.search_matches_algebra
    assert abs(res.r_decimal - F("1.5427809064729")) < F(1, 10**12)
    assert abs(res.w_decimal - F("1.07152386690879")) < F(1, 10**12)


def test_w_one_is_suboptimal():
    r_approx = optimize_bound().r_decimal
    inner = min(bound_asymptotic(F(1), F(0)), bound_asymptotic(F(1), F(1)))
    assert inner < r_approx
    # dense grid: no w does better than the optimum
    for i in range(51):
        w = F(1) + F(i, 100)
        inner = min(bound_asymptotic(w, F(0)), bound_asymptotic(w, F(1)))
        assert R_STAR.compare_rational(inner) >= 0, w


def test_certification_t3():
    cert = certify_prices(3)
    assert cert.table == price_table(3)
    assert cert.ok
    assert len(cert.forbidden) == 11
    names = [c["name"] for c in cert.forbidden]
    assert "85 C3 items with two B31" in names  # 12*7 + 1
    assert any("opener and small adaptive item" in n for n in names)
