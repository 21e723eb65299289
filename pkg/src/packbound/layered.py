"""Exact arithmetic for rationals carrying symbolic k^(-e) perturbation atoms.

A layered value is  base + sum(c * k^(-e))  where base and every coefficient c
are exact rationals and every exponent e is a (possibly astronomically large)
positive integer.  The perturbations are never materialized: for a large
enough context parameter k the sign of a value is decided lexicographically,
by the base first and then by the coefficient at the smallest exponent
present.  Every comparison checks a separation certificate that guarantees
the lexicographic answer matches the true rational evaluation; if the
certificate fails the comparison raises instead of returning an unsound sign.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class CertificateViolation(ArithmeticError):
    """The context's k is too small to decide this comparison soundly."""


def _as_fraction(q: Rational) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def _require_separation(k: int, gap: int, count: int, cmax: Fraction, cmin: Fraction) -> None:
    """Assert k**gap > 2*count*cmax/cmin, the margin that makes the leading
    term dominate everything at deeper exponents.

    `gap` is the exponent distance between the deciding term and the nearest
    deeper term.  The power k**gap is only computed when the cheap bit-length
    bound cannot settle it, so astronomically large gaps stay cheap.
    """
    q = 2 * count * cmax / cmin
    qn, qd = q.numerator, q.denominator
    # q < 2**bits, and k >= 2, so gap >= bits already implies k**gap > q.
    bits = qn.bit_length() - qd.bit_length() + 1
    if gap >= bits:
        return
    if gap > 0 and k**gap * qd > qn:
        return
    raise CertificateViolation(
        f"separation certificate failed: need k^{gap} > {q} with k={k}"
    )


class LayeredValue:
    """Immutable exact number of the form base + sum(c * k^(-e)).

    Arithmetic (+, -, scaling by rationals) is componentwise.  Ordering is
    total for any fixed context, certified at every comparison.
    """

    __slots__ = ("ctx", "base", "atoms", "_profile")

    def __init__(self, ctx: "LayeredContext", base: Fraction, atoms: dict):
        self.ctx = ctx
        self.base = base
        self.atoms = atoms
        self._profile = None

    # -- construction helpers -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.atoms

    def profile(self):
        """Cached per-value atom summary used by the separation certificate:
        (count, min |coef|, max |coef|, min exponent,
         lower bit bound of min |coef|, upper bit bound of max |coef|)."""
        if self._profile is None:
            coefs = [abs(c) for c in self.atoms.values()]
            if coefs:
                lo, hi = min(coefs), max(coefs)
                lo_bits = lo.numerator.bit_length() - lo.denominator.bit_length() - 1
                hi_bits = hi.numerator.bit_length() - hi.denominator.bit_length() + 1
                self._profile = (len(coefs), lo, hi, min(self.atoms), lo_bits, hi_bits)
            else:
                self._profile = (0, None, None, None, None, None)
        return self._profile

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "LayeredValue") -> "LayeredValue":
        if not isinstance(other, LayeredValue):
            return NotImplemented
        self._check_ctx(other)
        if not other.atoms:
            return LayeredValue(self.ctx, self.base + other.base, self.atoms)
        if not self.atoms:
            return LayeredValue(self.ctx, self.base + other.base, other.atoms)
        merged = dict(self.atoms)
        for e, c in other.atoms.items():
            s = merged.get(e)
            if s is None:
                merged[e] = c
            else:
                s = s + c
                if s:
                    merged[e] = s
                else:
                    del merged[e]
        return LayeredValue(self.ctx, self.base + other.base, merged)

    def __neg__(self) -> "LayeredValue":
        return LayeredValue(
            self.ctx, -self.base, {e: -c for e, c in self.atoms.items()}
        )

    def __sub__(self, other: "LayeredValue") -> "LayeredValue":
        if not isinstance(other, LayeredValue):
            return NotImplemented
        return self + (-other)

    def __mul__(self, q: Rational) -> "LayeredValue":
        """Scale by an exact rational (not by another layered value)."""
        q = _as_fraction(q)
        if not q:
            return self.ctx.zero
        return LayeredValue(
            self.ctx, self.base * q, {e: c * q for e, c in self.atoms.items()}
        )

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> "LayeredValue":
        return self * (Fraction(1) / _as_fraction(q))

    # -- ordering -------------------------------------------------------------

    def _check_ctx(self, other: "LayeredValue") -> None:
        if self.ctx is not other.ctx:
            raise ValueError("cannot mix layered values from different contexts")

    def compare(self, other: "LayeredValue") -> int:
        """Certified sign of self - other: -1, 0 or +1."""
        if self.ctx is not other.ctx:
            raise ValueError("cannot mix layered values from different contexts")
        xa, ya = self.atoms, other.atoms
        bx, by = self.base, other.base
        if not xa and not ya:
            n1 = bx.numerator * by.denominator
            n2 = by.numerator * bx.denominator
            return (n1 > n2) - (n1 < n2)
        if bx != by:
            # The base difference sits at exponent 0 and must dominate every
            # atom of both operands (no cancellation assumed: conservative).
            dn = bx.numerator * by.denominator - by.numerator * bx.denominator
            dd = bx.denominator * by.denominator
            nx, lox, hix, ex, lbx, ubx = self.profile()
            ny, loy, hiy, ey, lby, uby = other.profile()
            count = nx + ny + 1
            gap = ex if ey is None else (ey if ex is None else min(ex, ey))
            db_bits = abs(dn).bit_length() - dd.bit_length()
            hi_bits = db_bits + 1
            if ubx is not None and ubx > hi_bits:
                hi_bits = ubx
            if uby is not None and uby > hi_bits:
                hi_bits = uby
            lo_bits = db_bits - 1
            if lbx is not None and lbx < lo_bits:
                lo_bits = lbx
            if lby is not None and lby < lo_bits:
                lo_bits = lby
            # 2*count*cmax/cmin <= 2^(1 + bits(count) + hi_bits - lo_bits)
            if gap < 2 + count.bit_length() + hi_bits - lo_bits:
                db = Fraction(dn, dd)
                cmax = max(abs(db), *(v for v in (hix, hiy) if v is not None))
                cmin = min(abs(db), *(v for v in (lox, loy) if v is not None))
                _require_separation(self.ctx.k, gap, count, cmax, cmin)
            return 1 if dn > 0 else -1
        diff = dict(xa)
        for e, c in ya.items():
            s = diff.get(e)
            if s is None:
                diff[e] = -c
            else:
                s = s - c
                if s:
                    diff[e] = s
                else:
                    del diff[e]
        if not diff:
            return 0
        e1 = min(diff)
        lead = diff[e1]
        if len(diff) > 1:
            e2 = min(e for e in diff if e != e1)
            coefs = [abs(c) for c in diff.values()]
            _require_separation(
                self.ctx.k, e2 - e1, len(diff), max(coefs), min(coefs)
            )
        return 1 if lead > 0 else -1

    def sign(self) -> int:
        return self.compare(self.ctx.zero)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, LayeredValue):
            return NotImplemented
        # Structural equality coincides with semantic equality: a nonempty
        # certified difference never has sign zero.
        return self.base == other.base and self.atoms == other.atoms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.base, frozenset(self.atoms.items())))

    def __repr__(self):
        if not self.atoms:
            return f"LayeredValue({self.base})"
        terms = ", ".join(
            f"{c}*k^-{e}" for e, c in sorted(self.atoms.items())
        )
        return f"LayeredValue({self.base} + {terms})"


class LayeredContext:
    """Shared arithmetic context: fixes the perturbation base k.

    Values are immutable and may be shared freely; the context itself is
    read-only after construction.
    """

    __slots__ = ("k", "zero", "one")

    def __init__(self, k: int):
        if not isinstance(k, int) or k < 2:
            raise ValueError("context parameter k must be an integer >= 2")
        self.k = k
        self.zero = LayeredValue(self, Fraction(0), {})
        self.one = LayeredValue(self, Fraction(1), {})

    def rational(self, num: Rational, den: Rational = 1) -> LayeredValue:
        return LayeredValue(self, Fraction(_as_fraction(num), _as_fraction(den)), {})

    def atom(self, exponent: int, coefficient: Rational) -> LayeredValue:
        return self.value(0, {exponent: coefficient})

    def value(self, base: Rational, atoms: Mapping[int, Rational]) -> LayeredValue:
        """Build a value, normalizing: zero coefficients dropped, exponent-0
        atoms folded into the base (k^0 = 1), exponents must be >= 0."""
        b = _as_fraction(base)
        cleaned: dict = {}
        for e, c in atoms.items():
            if e < 0:
                raise ValueError("atom exponents must be non-negative")
            c = _as_fraction(c)
            if not c:
                continue
            if e == 0:
                b += c
            else:
                cleaned[e] = c
        return LayeredValue(self, b, cleaned)

    def sum(self, values: Iterable[LayeredValue]) -> LayeredValue:
        base = Fraction(0)
        atoms: dict = {}
        for v in values:
            if v.ctx is not self:
                raise ValueError("cannot mix layered values from different contexts")
            base += v.base
            for e, c in v.atoms.items():
                s = atoms.get(e)
                if s is None:
                    atoms[e] = c
                else:
                    s = s + c
                    if s:
                        atoms[e] = s
                    else:
                        del atoms[e]
        return LayeredValue(self, base, atoms)

    def evaluate_exact(self, v: LayeredValue) -> Fraction:
        """Materialize base + sum(c * k^(-e)) as one rational.

        Only sensible for small exponents (test oracle); the main code path
        never calls this.
        """
        total = v.base
        for e, c in v.atoms.items():
            total += c / Fraction(self.k) ** e
        return total
