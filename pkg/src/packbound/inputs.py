"""Construction parameters and the exact item sizes of the adversarial input.

The input tree consists of t-1 trunk batches of slightly-undersized
reciprocal items (sizes C_t .. C_2), one adaptive batch whose sizes carry the
perturbation atoms, and three mutually exclusive continuations built from
five fixed item kinds (B11 | B21 -> B22 | B31 -> B32).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .layered import LayeredContext, LayeredValue


def default_eps(t: int) -> Fraction:
    """Reproducible default, strictly below the required 1/2058^t threshold."""
    return Fraction(1, 2 * 2058**t)


@dataclass(frozen=True)
class ConstructionParams:
    """Scale parameters of the adversarial input.

    n = 6 * 7^t * m keeps every batch size divisible where the constructions
    need it; eps must stay below 1/2058^t; k = ceil(1/eps) is the
    perturbation base shared by the whole run.
    """

    t: int = 3
    m: int = 1
    eps: Optional[Fraction] = None

    def __post_init__(self):
        if self.t < 3:
            raise ValueError("t must be at least 3")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        eps = self.eps if self.eps is not None else default_eps(self.t)
        eps = Fraction(eps)
        if not 0 < eps < Fraction(1, 2058**self.t):
            raise ValueError(f"eps must lie in (0, 1/2058^{self.t})")
        object.__setattr__(self, "eps", eps)

    @property
    def n(self) -> int:
        return 6 * 7**self.t * self.m

    @property
    def k(self) -> int:
        num, den = self.eps.numerator, self.eps.denominator
        return -(-den // num)  # ceil(1/eps)

    def context(self) -> LayeredContext:
        return LayeredContext(self.k)


def c_batch_sizes(params: ConstructionParams) -> list[tuple[str, Fraction]]:
    """Trunk batch sizes in arrival order: (label, exact size) for j = t..2.

    The smallest size C_t sits just below 1/(6*7^(t-1)); every later batch
    size (1+28*eps)/7^j sits just above 1/7^j.
    """
    t, eps = params.t, params.eps
    sizes = [(f"C{t}", Fraction(1, 6 * 7 ** (t - 1)) - 294 * eps)]
    for j in range(t - 1, 1, -1):
        sizes.append((f"C{j}", (1 + 28 * eps) / 7**j))
    for _, s in sizes:
        if not 0 < s <= 1:
            raise ValueError(f"batch size {s} outside (0, 1]")
    return sizes


def c_size_map(params: ConstructionParams) -> dict[str, Fraction]:
    return dict(c_batch_sizes(params))


def a_item_size(params: ConstructionParams, ctx: LayeredContext, exponent: int) -> LayeredValue:
    """Adaptive-batch item of size (1 + eps + k^(-exponent)) / 7."""
    base = (1 + params.eps) / 7
    return ctx.value(base, {exponent: Fraction(1, 7)})


def b_item_sizes(
    eps: Fraction, gamma: LayeredValue, ctx: LayeredContext
) -> dict[str, LayeredValue]:
    """Continuation item sizes; B31/B32 depend on the run's gamma."""
    sizes = {
        "B11": ctx.rational((1 + 2 * eps) / 2),
        "B21": ctx.rational((1 + eps) / 3),
        "B22": ctx.rational((1 + eps) / 2),
        "B31": ctx.rational((5 - 2 * eps) / 14) - gamma * Fraction(3, 14),
        "B32": ctx.rational(Fraction(1, 2)) + gamma * Fraction(1, 14),
    }
    half = ctx.rational(Fraction(1, 2))
    if not sizes["B32"] > half:
        raise ValueError("B32 size must exceed 1/2")
    if not sizes["B32"] < ctx.rational(Fraction(1, 2) + eps / 56):
        raise ValueError("B32 size must stay below 1/2 + eps/56")
    if not sizes["B31"] > ctx.rational(Fraction(35714, 100000)):
        raise ValueError("B31 size must exceed 0.35714")
    if not sizes["B21"] < ctx.rational(Fraction(33334, 100000)):
        raise ValueError("B21 size must stay below 0.33334")
    return sizes


def b_item_counts(n: int, n_large: int) -> dict[str, int]:
    """Continuation batch counts for a run that produced n_large adaptive
    openers.  Non-integral values floor; verification always uses the issued
    counts, never the idealized formulas."""
    if not 0 <= n_large <= n:
        raise ValueError("n_large out of range")
    return {
        "B11": n // 3,
        "B21": n,
        "B22": n,
        "B31": (7 * n - 7 * n_large) // 6,
        "B32": (7 * n - 5 * n_large) // 6,
    }
