"""Weight-based analysis: bin types, supremum prices, and the final bound.

Item weights depend on one free parameter w (the weight of an adaptive item
that opened a bin), so weights and prices are carried as affine functions of
w with exact rational coefficients.  The supremum price of every bin type is
certified by exhaustive enumeration of feasible union patterns, and the
closing max-min optimization is verified against its exact algebraic
solution in Q[sqrt(1387369)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import BRANCHES, B_LABELS, Transcript, TranscriptStats
from .inputs import ConstructionParams, b_item_sizes, c_size_map, default_eps
from .layered import LayeredContext, LayeredValue
from .optbounds import ideal_opt_bound

W_LOW = Fraction(1)
W_HIGH = Fraction(3, 2)


class CertificationFailure(RuntimeError):
    """An enumerated pattern contradicts a closed-form price."""


# ---------------------------------------------------------------------------
# affine functions of the free weight w
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineW:
    """const + slope * w with exact rational coefficients."""

    const: Fraction = Fraction(0)
    slope: Fraction = Fraction(0)

    def __add__(self, other):
        other = _as_affine(other)
        return AffineW(self.const + other.const, self.slope + other.slope)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_affine(other)
        return AffineW(self.const - other.const, self.slope - other.slope)

    def __mul__(self, q) -> "AffineW":
        q = Fraction(q)
        return AffineW(self.const * q, self.slope * q)

    __rmul__ = __mul__

    def at(self, w: Fraction) -> Fraction:
        return self.const + self.slope * Fraction(w)

    def le_on_range(self, other, lo: Fraction = W_LOW, hi: Fraction = W_HIGH) -> bool:
        """self <= other for every w in [lo, hi] (both sides affine)."""
        other = _as_affine(other)
        return self.at(lo) <= other.at(lo) and self.at(hi) <= other.at(hi)

    def __repr__(self):
        return f"AffineW({self.const} + {self.slope}*w)"


def _as_affine(x) -> AffineW:
    if isinstance(x, AffineW):
        return x
    return AffineW(Fraction(x))


W_TERM = AffineW(Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# weights, bin types, prices
# ---------------------------------------------------------------------------


def item_weight(batch: str, large: Optional[bool], t: int) -> AffineW:
    """Weight of one item: trunk batches carry reciprocal weights whose sum
    telescopes to 1/6, opener adaptive items carry w, everything else 1."""
    if batch == "A":
        return W_TERM if large else AffineW(Fraction(1))
    if batch.startswith("C"):
        j = int(batch[1:])
        if j == t:
            return AffineW(Fraction(1, 6 * 7 ** (t - 2)))
        return AffineW(Fraction(1, 7 ** (j - 1)))
    return AffineW(Fraction(1))


def trunk_weight_identity(t: int) -> bool:
    """The trunk weights of one item per batch sum to exactly 1/6."""
    total = Fraction(1, 6 * 7 ** (t - 2)) + sum(
        Fraction(1, 7 ** (j - 1)) for j in range(2, t)
    )
    return total == Fraction(1, 6)


def classify_bin(batches: Iterable[str], t: int) -> str:
    """Bin type from the union of its contents over all continuations:
    the smallest item class present decides."""
    batches = set(batches)
    if not batches:
        raise ValueError("cannot classify an empty bin")
    c_present = [int(b[1:]) for b in batches if b.startswith("C")]
    if c_present:
        return f"type{max(c_present)}"
    if "A" in batches:
        return "type1"
    if "B21" in batches or "B31" in batches:
        return "double"
    return "single"


def price_table(t: int) -> dict[str, AffineW]:
    """Closed-form supremum prices per bin type."""
    table = {
        "single": AffineW(Fraction(1)),
        "double": AffineW(Fraction(2)),
        "type1": AffineW(Fraction(5), Fraction(1)),
        f"type{t}": AffineW(Fraction(7)),
    }
    for j in range(2, t):
        table[f"type{j}"] = AffineW(Fraction(7) - Fraction(1, 7 ** (j - 1)))
    return table


def bin_unions(transcript: Transcript) -> list[list[int]]:
    """S(D) for every bin: trunk bins extended by their additions in all
    three continuations (counted once), branch-opened bins per branch."""
    n_trunk = len(transcript.trunk_state.bins)
    unions = [list(b) for b in transcript.trunk_state.bins]
    for branch in BRANCHES:
        st = transcript.branch_states[branch]
        for bid, contents in enumerate(st.bins):
            if bid < n_trunk:
                unions[bid].extend(contents[len(transcript.trunk_state.bins[bid]) :])
            else:
                unions.append(list(contents))
    return unions


def realized_price(item_ids: Iterable[int], items: dict, t: int) -> AffineW:
    """Total weight of a bin's union contents."""
    total = AffineW()
    for i in item_ids:
        it = items[i]
        total = total + item_weight(it.batch, it.large, t)
    return total


@dataclass
class WeightPriceCheck:
    """Outcome of the weight-vs-price inequality on one transcript."""

    total_weight: AffineW
    price_sum: AffineW
    price_bound: AffineW
    equality: bool
    inequality: bool
    per_bin_ok: bool

    @property
    def ok(self) -> bool:
        return self.equality and self.inequality and self.per_bin_ok


def check_weight_price_inequality(
    transcript: Transcript, stats: TranscriptStats
) -> WeightPriceCheck:
    """Total weight of all items (each counted once across continuations)
    equals the sum of realized bin prices exactly, and is bounded by the
    price table applied to the bins-opened counters; both hold for every
    w in [1, 1.5]."""
    t = transcript.t
    items = transcript.items
    total = AffineW()
    for it in items.values():
        total = total + item_weight(it.batch, it.large, t)

    table = price_table(t)
    price_sum = AffineW()
    per_bin_ok = True
    for union in bin_unions(transcript):
        price = realized_price(union, items, t)
        price_sum = price_sum + price
        bin_type = classify_bin([items[i].batch for i in union], t)
        if not price.le_on_range(table[bin_type]):
            per_bin_ok = False

    nu = stats.nu
    bound = AffineW()
    for j in range(2, t + 1):
        bound = bound + table[f"type{j}"] * nu[f"C{j}"]
    bound = bound + table["type1"] * nu["A"]
    bound = bound + table["double"] * (nu["B21"] + nu["B31"])
    bound = bound + table["single"] * (nu["B11"] + nu["B22"] + nu["B32"])

    return WeightPriceCheck(
        total_weight=total,
        price_sum=price_sum,
        price_bound=bound,
        equality=(total == price_sum),
        inequality=total.le_on_range(bound),
        per_bin_ok=per_bin_ok,
    )


def ideal_total_weight(n: Fraction, n_large: Fraction) -> AffineW:
    """Closed form of the total weight when every batch count is exactly its
    idealized formula: w*n_large - 3*n_large + 35n/6."""
    n, n_large = Fraction(n), Fraction(n_large)
    return AffineW(-3 * n_large + Fraction(35, 6) * n, n_large)


# ---------------------------------------------------------------------------
# multipliers and the closing inequality chain
# ---------------------------------------------------------------------------


def stopping_labels(t: int) -> list[str]:
    return [f"C{j}" for j in range(t, 1, -1)] + ["A"] + list(B_LABELS)


def multiplier_table(t: int) -> dict[str, AffineW]:
    """Nonnegative multipliers combining the per-stopping-point constraints;
    differences of consecutive type prices on the trunk, price-table slack on
    the branches."""
    table: dict[str, AffineW] = {f"C{t}": AffineW(Fraction(1, 7 ** (t - 2)))}
    for j in range(3, t):
        table[f"C{j}"] = AffineW(Fraction(6, 7 ** (j - 1)))
    table["C2"] = AffineW(Fraction(13, 7), Fraction(-1))
    table["A"] = W_TERM
    for lab in B_LABELS:
        table[lab] = AffineW(Fraction(1))
    return table


def multipliers(t: int, w: Fraction) -> list[tuple[str, Fraction]]:
    """Evaluated multipliers per stopping point; all must be nonnegative."""
    w = Fraction(w)
    if not W_LOW <= w <= W_HIGH:
        raise ValueError("w must lie in [1, 1.5]")
    table = multiplier_table(t)
    out = []
    for lab in stopping_labels(t):
        value = table[lab].at(w)
        if value < 0:
            raise ValueError(f"negative multiplier at {lab}")
        out.append((lab, value))
    return out


def cost_formula_affine(t: int, nu: dict[str, Fraction]) -> dict[str, Fraction]:
    """Algorithm cost at each stopping point as a function of the counters."""
    trunk = [f"C{j}" for j in range(t, 1, -1)] + ["A"]
    delta = sum(nu[lab] for lab in trunk)
    out: dict[str, Fraction] = {}
    running = Fraction(0)
    for lab in trunk:
        running += nu[lab]
        out[lab] = running
    out["B11"] = delta + nu["B11"]
    out["B21"] = delta + nu["B21"]
    out["B22"] = delta + nu["B21"] + nu["B22"]
    out["B31"] = delta + nu["B31"]
    out["B32"] = delta + nu["B31"] + nu["B32"]
    return out


def combination_identity_holds(t: int, nu: dict[str, Fraction]) -> bool:
    """The multiplier combination of the cost formulas telescopes to the
    price bound: sum over types of price*opened plus the branch surcharges.
    Exact identity in w for any counter vector."""
    table = multiplier_table(t)
    costs = cost_formula_affine(t, nu)
    lhs = AffineW()
    for lab in stopping_labels(t):
        lhs = lhs + table[lab] * costs[lab]

    prices = price_table(t)
    rhs = AffineW()
    for j in range(2, t + 1):
        rhs = rhs + prices[f"type{j}"] * nu[f"C{j}"]
    rhs = rhs + prices["type1"] * nu["A"]
    rhs = (
        rhs
        + _as_affine(nu["B11"])
        + _as_affine(2 * nu["B21"])
        + _as_affine(nu["B22"])
        + _as_affine(2 * nu["B31"])
        + _as_affine(nu["B32"])
    )
    return lhs == rhs


def rhs_identity_holds(t: int, n: Fraction, n_large: Fraction) -> bool:
    """Multiplier-weighted sum of the idealized optimum bounds collapses to
    the closed-form denominator of the finite-t bound."""
    n, n_large = Fraction(n), Fraction(n_large)
    table = multiplier_table(t)
    total = AffineW()
    for lab in stopping_labels(t):
        total = total + table[lab] * ideal_opt_bound(lab, n, n_large)
    expected = AffineW(
        Fraction(2133, 588) * n
        - Fraction(5, 4) * n_large
        + n / (7 * 48 * 49 ** (t - 2))
        + n / (48 * 49),
        n / 7,
    )
    return total == expected


def bound_finite_t(t: int, w: Fraction, nl: Fraction) -> Fraction:
    """Ratio lower bound implied by the chain at finite t."""
    w, nl = Fraction(w), Fraction(nl)
    num = w * nl - 3 * nl + Fraction(35, 6)
    den = (
        Fraction(2133, 588)
        - Fraction(5, 4) * nl
        + Fraction(1, 7 * 48 * 49 ** (t - 2))
        + Fraction(1, 48 * 49)
        + w / 7
    )
    if den <= 0:
        raise ValueError("bound denominator must be positive")
    return num / den


def bound_asymptotic(w: Fraction, nl: Fraction) -> Fraction:
    """Limit of the finite-t bound as t grows."""
    w, nl = Fraction(w), Fraction(nl)
    num = w * nl - 3 * nl + Fraction(35, 6)
    den = Fraction(8533, 2352) - Fraction(5, 4) * nl + w / 7
    if den <= 0:
        raise ValueError("bound denominator must be positive")
    return num / den


# ---------------------------------------------------------------------------
# exact algebraic optimum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticNumber:
    """a + b*sqrt(d) with exact rational a, b and a fixed non-square d."""

    a: Fraction
    b: Fraction
    d: int

    def _check(self, other: "QuadraticNumber") -> None:
        if self.d != other.d:
            raise ValueError("mixed radicands")

    def __add__(self, other):
        if isinstance(other, QuadraticNumber):
            self._check(other)
            return QuadraticNumber(self.a + other.a, self.b + other.b, self.d)
        return QuadraticNumber(self.a + Fraction(other), self.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadraticNumber) else QuadraticNumber(-Fraction(other), Fraction(0), self.d))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadraticNumber):
            self._check(other)
            return QuadraticNumber(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        q = Fraction(other)
        return QuadraticNumber(self.a * q, self.b * q, self.d)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def compare_rational(self, q: Fraction) -> int:
        """Exact sign of self - q via one squaring."""
        q = Fraction(q)
        x = self.a - q
        if self.b == 0:
            return (x > 0) - (x < 0)
        # sign of x + b*sqrt(d)
        if self.b > 0:
            if x >= 0:
                return 1
            lhs, rhs = self.b**2 * self.d, x**2
        else:
            if x <= 0:
                return -1
            lhs, rhs = x**2, self.b**2 * self.d
        return (lhs > rhs) - (lhs < rhs)

    def to_fraction(self, places: int = 40) -> Fraction:
        """Rational approximation within 10^-places (floor square root)."""
        scale = 10**places
        root = Fraction(math.isqrt(self.d * scale * scale), scale)
        return self.a + self.b * root


SQRT_ARG = 1387369
R_STAR = QuadraticNumber(Fraction(1363, 120), Fraction(-1, 120), SQRT_ARG)
W_STAR = QuadraticNumber(Fraction(-1075, 96), Fraction(1, 96), SQRT_ARG)


def w_star_fraction(places: int = 40) -> Fraction:
    return W_STAR.to_fraction(places)


def r_star_fraction(places: int = 40) -> Fraction:
    return R_STAR.to_fraction(places)


@dataclass
class OptimizationResult:
    """Exact optimum of the max-min bound with its numeric confirmation."""

    w_star: QuadraticNumber
    r_star: QuadraticNumber
    w_decimal: Fraction
    r_decimal: Fraction
    linear_residual_zero: bool  # w* - (3 - 1.25 r*) == 0
    closing_residual_zero: bool  # 35/6 - r*(8533/2352 + w*/7) == 0
    quadratic_residual_zero: bool  # 420 r*^2 - 9541 r* + 13720 == 0
    flat_in_nl: bool  # at w*, the bound is the same for nl in {0, 1/2, 1}
    search_w: Fraction
    search_value: Fraction
    search_iterations: int
    search_matches_algebra: bool


def _inner_min(w: Fraction) -> Fraction:
    """min over nl in [0,1] of the asymptotic bound; the bound is a ratio of
    affines in nl with positive denominator, hence monotone, so the min sits
    at an endpoint."""
    return min(bound_asymptotic(w, Fraction(0)), bound_asymptotic(w, Fraction(1)))


def golden_section_max(f, lo: Fraction, hi: Fraction, iterations: int = 80):
    """Golden-section search in exact rationals (Fibonacci-quotient ratio)."""
    inv_phi = Fraction(377, 610)
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
    mid = (lo + hi) / 2
    return mid, f(mid)


def optimize_bound(iterations: int = 80) -> OptimizationResult:
    """Maximize over w in [1, 1.5] the worst-case (over nl) asymptotic bound
    and verify the exact closed forms of the optimum."""
    w_gs, value_gs = golden_section_max(_inner_min, W_LOW, W_HIGH, iterations)

    linear = W_STAR - (QuadraticNumber(Fraction(3), Fraction(0), SQRT_ARG) - R_STAR * Fraction(5, 4))
    closing = -(
        R_STAR * (W_STAR * Fraction(1, 7) + Fraction(8533, 2352))
    ) + Fraction(35, 6)
    quadratic = R_STAR * R_STAR * 420 - R_STAR * 9541 + Fraction(13720)

    w_dec = w_star_fraction()
    r_dec = r_star_fraction()
    # w_dec is a 40-digit approximation, so the three values agree to ~1e-30
    flat_in_nl = all(
        abs(bound_asymptotic(w_dec, nl) - r_dec) < Fraction(1, 10**30)
        for nl in (Fraction(0), Fraction(1, 2), Fraction(1))
    )

    tol = Fraction(1, 10**9)
    return OptimizationResult(
        w_star=W_STAR,
        r_star=R_STAR,
        w_decimal=w_dec,
        r_decimal=r_dec,
        linear_residual_zero=linear.is_zero(),
        closing_residual_zero=closing.is_zero(),
        quadratic_residual_zero=quadratic.is_zero(),
        flat_in_nl=flat_in_nl,
        search_w=w_gs,
        search_value=value_gs,
        search_iterations=iterations,
        search_matches_algebra=(
            abs(w_gs - w_dec) < tol and abs(value_gs - r_dec) < tol
        ),
    )


# ---------------------------------------------------------------------------
# exhaustive price certification
# ---------------------------------------------------------------------------

GAMMA_EXPONENT = 8
ETA_EXPONENT = 16


@dataclass
class PriceCertification:
    """Certified price table with maximal witness patterns."""

    t: int
    table: dict[str, AffineW]
    witnesses: dict[str, dict]
    forbidden: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(case["infeasible"] for case in self.forbidden)


def _certification_context(t: int) -> tuple[LayeredContext, Fraction]:
    eps = default_eps(t)
    k = 2 * 2058**t
    return LayeredContext(k), eps


def _limit_sizes(ctx: LayeredContext, eps: Fraction):
    """Enumeration sizes for adaptive items: infimum limits, pushed strictly
    above the open bound by a bottom-layer atom so that strict feasibility
    questions are decided exactly."""
    small = ctx.value((1 + eps) / 7, {ETA_EXPONENT: Fraction(1)})
    large = ctx.value(
        (1 + eps) / 7, {GAMMA_EXPONENT: Fraction(4, 7), ETA_EXPONENT: Fraction(1)}
    )
    return small, large


def _branch_menus(bsizes: dict[str, LayeredValue], ctx: LayeredContext):
    """Per-branch addition options as (extra load, unit weight) pairs, sorted
    by weight descending so the first feasible option is the best one."""
    zero = ctx.zero
    menus = []
    b11 = [(zero, 0), (bsizes["B11"], 1)]
    menus.append(sorted(b11, key=lambda p: -p[1]))
    for first, second in (("B21", "B22"), ("B31", "B32")):
        options = []
        for i in range(3):
            for j in range(2):
                load = ctx.sum([bsizes[first]] * i + [bsizes[second]] * j)
                options.append((load, i + j))
        menus.append(sorted(options, key=lambda p: -p[1]))
    return menus


def _best_additions(rem: LayeredValue, menus) -> int:
    total = 0
    for menu in menus:
        for load, weight in menu:
            if load <= rem:
                total += weight
                break
    return total


def certify_prices(t: int) -> PriceCertification:
    """Exhaustively enumerate feasible union patterns per bin type and check
    the maximum realized price against the closed forms.

    Patterns: trunk counts (C items of classes at or above the type, small
    adaptive items up to six, one optional opener for type 1) with
    independent per-branch additions, every branch exactly load-feasible.
    Raises CertificationFailure with a witness on any mismatch.
    """
    ctx, eps = _certification_context(t)
    csize = c_size_map(ConstructionParams(t=t))
    gamma = ctx.atom(GAMMA_EXPONENT, 1)
    bsizes = b_item_sizes(eps, gamma, ctx)
    small_lim, large_lim = _limit_sizes(ctx, eps)
    menus = _branch_menus(bsizes, ctx)
    one = ctx.one
    expected = price_table(t)

    table: dict[str, AffineW] = {}
    witnesses: dict[str, dict] = {}

    def weight_of_class(j: int) -> Fraction:
        return item_weight(f"C{j}", None, t).const

    # -- types t..2: C items of classes j..2, plus small adaptive items -----
    for typ in range(t, 1, -1):
        classes = list(range(typ, 1, -1))
        best: Optional[Fraction] = None
        best_pattern: dict = {}

        def scan(idx: int, load: LayeredValue, weight: Fraction, counts: list[int]):
            nonlocal best, best_pattern
            if idx == len(classes):
                run = load
                for n_small in range(7):
                    if run > one:
                        break
                    price = weight + n_small + _best_additions(one - run, menus)
                    if best is None or price > best:
                        best = price
                        best_pattern = {
                            "c_counts": dict(zip([f"C{j}" for j in classes], counts)),
                            "small_items": n_small,
                        }
                    run = run + small_lim
                return
            j = classes[idx]
            size = ctx.rational(csize[f"C{j}"])
            start = 1 if idx == 0 else 0  # the type-defining class is present
            run = load + size * start
            cnt = start
            while run <= one:
                scan(idx + 1, run, weight + cnt * weight_of_class(j), counts + [cnt])
                run = run + size
                cnt += 1

        scan(0, ctx.zero, Fraction(0), [])
        label = f"type{typ}"
        got = AffineW(best if best is not None else Fraction(0))
        if got != expected[label]:
            raise CertificationFailure(
                f"{label}: enumerated price {got!r} != closed form "
                f"{expected[label]!r}; witness {best_pattern}"
            )
        table[label] = got
        witnesses[label] = best_pattern

    # -- type 1: first item is the opener adaptive item, then small ones -----
    best_beside_opener: Optional[Fraction] = None
    wit_opener: dict = {}
    for n_small in range(6):
        load = large_lim + small_lim * n_small
        if load > one:
            break
        price = Fraction(n_small) + _best_additions(one - load, menus)
        if best_beside_opener is None or price > best_beside_opener:
            best_beside_opener = price
            wit_opener = {"opener": 1, "small_items": n_small}
    if best_beside_opener != 5:
        raise CertificationFailure(
            f"type1: weight beside the opener reaches {best_beside_opener}, "
            "expected 5"
        )
    table["type1"] = AffineW(Fraction(5), Fraction(1))
    witnesses["type1"] = wit_opener

    # -- double and single bins ----------------------------------------------
    best_double = Fraction(0)
    wit_double: dict = {}
    for first, second in (("B21", "B22"), ("B31", "B32")):
        for i in range(1, 3):
            for j in range(2):
                load = ctx.sum([bsizes[first]] * i + [bsizes[second]] * j)
                if load <= one and i + j > best_double:
                    best_double = Fraction(i + j)
                    wit_double = {first: i, second: j}
    if best_double != 2:
        raise CertificationFailure(f"double: enumerated price {best_double} != 2")
    table["double"] = AffineW(Fraction(2))
    witnesses["double"] = wit_double

    for lab in ("B11", "B22", "B32"):
        if bsizes[lab] + bsizes[lab] <= one:
            raise CertificationFailure(f"single: two {lab} items fit one bin")
    table["single"] = AffineW(Fraction(1))
    witnesses["single"] = {"item": 1}

    cert = PriceCertification(t=t, table=table, witnesses=witnesses)
    cert.forbidden = _forbidden_cases(t, ctx, csize, bsizes, small_lim, large_lim)
    for case in cert.forbidden:
        if not case["infeasible"]:
            raise CertificationFailure(f"forbidden combination fits: {case['name']}")
    return cert


def _forbidden_cases(t, ctx, csize, bsizes, small_lim, large_lim) -> list[dict]:
    """The threshold combinations ruled out in the price case analysis, each
    confirmed by an exact load comparison."""
    one = ctx.one
    cases = []

    def check(name: str, load: LayeredValue):
        cases.append({"name": name, "infeasible": bool(load > one)})

    ct = ctx.rational(csize[f"C{t}"])
    p = 7 ** (t - 2)
    check(
        f"{12 * p + 1} C{t} items with two B31",
        ct * (12 * p + 1) + bsizes["B31"] * 2,
    )
    check(
        f"{14 * p + 1} C{t} items with two B21",
        ct * (14 * p + 1) + bsizes["B21"] * 2,
    )
    check(
        f"{21 * p + 1} C{t} items with one B11",
        ct * (21 * p + 1) + bsizes["B11"],
    )
    check(
        f"{28 * p + 1} C{t} items with one B21",
        ct * (28 * p + 1) + bsizes["B21"],
    )
    check(
        f"{28 * p + 1} C{t} items with one B31",
        ct * (28 * p + 1) + bsizes["B31"],
    )
    for j in range(2, t):
        cj = ctx.rational(csize[f"C{j}"])
        q = 7 ** (j - 1)
        check(f"{2 * q} C{j} items with two B31", cj * (2 * q) + bsizes["B31"] * 2)
        check(
            f"{(7 * q + 2) // 3} C{j} items with two B21",
            cj * ((7 * q + 2) // 3) + bsizes["B21"] * 2,
        )
        check(
            f"{(7 * q + 1) // 2} C{j} items with one B11",
            cj * ((7 * q + 1) // 2) + bsizes["B11"],
        )
        check(
            f"{(9 * q + 1) // 2} C{j} items with one B31",
            cj * ((9 * q + 1) // 2) + bsizes["B31"],
        )
        check(
            f"{(14 * q + 1) // 3} C{j} items with one B21",
            cj * ((14 * q + 1) // 3) + bsizes["B21"],
        )
    check(
        "opener and small adaptive item with two B31",
        large_lim + small_lim + bsizes["B31"] * 2,
    )
    return cases
