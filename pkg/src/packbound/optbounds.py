"""Upper bounds on optimal offline costs, realized by explicit packings.

Every bound is backed by a constructive feasible solution over the actual
issued items; feasibility is validated by exact load comparison per bin and
exact coverage accounting.  A tiny-instance exhaustive solver provides an
independent optimum for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import Item
from .layered import LayeredContext, LayeredValue


class InfeasibleConstruction(RuntimeError):
    """A constructive packing failed validation; signals a parameter bug."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def opt_upper_bound(label: str, t: int, n: int, n_large: Optional[int] = None) -> Fraction:
    """Bin count achieved by the constructive packing for a stopping point.

    Trunk points and the first two continuations divide exactly; the third
    continuation depends on n_large and uses per-group ceilings, adding at
    most 3 bins over the ideal formula.
    """
    if label.startswith("C"):
        j = int(label[1:])
        if not 2 <= j <= t:
            raise ValueError(f"no trunk batch {label} for t={t}")
        return Fraction(n, 6 * 7 ** (j - 1))
    if label == "A":
        return Fraction(n, 6)
    if label == "B11":
        return Fraction(n, 3)
    if label == "B21":
        return Fraction(n, 2)
    if label == "B22":
        return Fraction(n)
    if label in ("B31", "B32"):
        if n_large is None:
            raise ValueError(f"{label} bound needs n_large")
        rest = n - n_large
        if label == "B31":
            return Fraction(_ceil_div(n_large, 6) + _ceil_div(rest, 2) + _ceil_div(rest, 12))
        return Fraction(_ceil_div(n_large, 3) + rest + _ceil_div(rest, 6))
    raise ValueError(f"unknown stopping point {label!r}")


def ideal_opt_bound(label: str, n: Fraction, n_large: Fraction) -> Fraction:
    """Formula value without integrality adjustments (used by the analytic
    identities, where n and n_large may be arbitrary rationals)."""
    if label == "A":
        return n / 6
    if label.startswith("C"):
        j = int(label[1:])
        return n / (6 * 7 ** (j - 1))
    return {
        "B11": n / 3,
        "B21": n / 2,
        "B22": n,
        "B31": (7 * n - 5 * n_large) / 12,
        "B32": (7 * n - 5 * n_large) / 6,
    }[label]


def first_batch_opt_lower(t: int, n: int, eps: Fraction) -> Fraction:
    """Every solution for the first batch needs at least n/(6*7^(t-1)) bins,
    because the batch size strictly exceeds 1/(6*7^(t-1)+1)."""
    cap = 6 * 7 ** (t - 1)
    c_t = Fraction(1, cap) - 294 * eps
    if not c_t > Fraction(1, cap + 1):
        raise ValueError(f"first batch size {c_t} not above 1/{cap + 1}")
    return Fraction(n, cap)


@dataclass
class OfflineSolution:
    """A feasible offline packing covering one stopping point."""

    label: str
    bins: list[list[int]]


def _chunks(ids: Sequence[int], size: int) -> list[list[int]]:
    return [list(ids[i : i + size]) for i in range(0, len(ids), size)]


def construct_solution(
    label: str,
    items: Iterable[Item],
    t: int,
    n: int,
    ctx: LayeredContext,
    gamma: Optional[LayeredValue] = None,
) -> OfflineSolution:
    """Build the feasible packing realizing opt_upper_bound(label).

    Expects exactly the items presented by the stopping point.  The result is
    validated (exact loads, exact coverage) before being returned; on the B31
    point bins are additionally held below 1 - gamma/7.
    """
    items = list(items)
    by_batch: dict[str, list[int]] = {}
    for it in items:
        by_batch.setdefault(it.batch, []).append(it.id)
    large_ids = [it.id for it in items if it.batch == "A" and it.large]
    small_ids = [it.id for it in items if it.batch == "A" and not it.large]
    n_large = len(large_ids)
    c_labels = [f"C{j}" for j in range(t, 1, -1)]

    def per_batch_bins(batches: list[str], per: int, count: int) -> list[list[int]]:
        bins: list[list[int]] = [[] for _ in range(count)]
        for batch in batches:
            ids = by_batch.get(batch, [])
            if len(ids) != n:
                raise InfeasibleConstruction(
                    f"expected {n} items of batch {batch}, got {len(ids)}"
                )
            for b, chunk in enumerate(_chunks(ids, per)):
                bins[b].extend(chunk)
        return bins

    if label.startswith("C"):
        j = int(label[1:])
        per = 6 * 7 ** (j - 1)
        bins = per_batch_bins([f"C{i}" for i in range(t, j - 1, -1)], per, n // per)
    elif label == "A":
        bins = per_batch_bins(c_labels + ["A"], 6, n // 6)
    elif label == "B11":
        bins = per_batch_bins(c_labels + ["A"], 3, n // 3)
        for b, chunk in enumerate(_chunks(by_batch["B11"], 1)):
            bins[b].extend(chunk)
    elif label == "B21":
        bins = per_batch_bins(c_labels + ["A"], 2, n // 2)
        for b, chunk in enumerate(_chunks(by_batch["B21"], 2)):
            bins[b].extend(chunk)
    elif label == "B22":
        bins = per_batch_bins(c_labels + ["A"], 1, n)
        for b, chunk in enumerate(_chunks(by_batch["B21"], 1)):
            bins[b].extend(chunk)
        for b, chunk in enumerate(_chunks(by_batch["B22"], 1)):
            bins[b].extend(chunk)
    elif label == "B31":
        bins = _third_branch_first(by_batch, large_ids, small_ids, c_labels, n, n_large)
    elif label == "B32":
        bins = _third_branch_second(by_batch, large_ids, small_ids, c_labels, n, n_large)
    else:
        raise ValueError(f"unknown stopping point {label!r}")

    bins = [b for b in bins if b]
    cap = ctx.one
    if label == "B31":
        if gamma is None:
            raise ValueError("B31 construction needs gamma")
        cap = ctx.one - gamma / 7
    solution = OfflineSolution(label=label, bins=bins)
    validate_solution(solution, items, ctx, cap)
    bound = opt_upper_bound(label, t, n, n_large if label in ("B31", "B32") else None)
    if len(bins) > bound:
        raise InfeasibleConstruction(
            f"{label}: built {len(bins)} bins, bound {bound}"
        )
    return solution


def _third_branch_first(by_batch, large_ids, small_ids, c_labels, n, n_large):
    """Bins for the first stop of the third continuation: openers six to a
    bin with six of each trunk size, pairs of small adaptive items with two
    B31 each, and dozens of trunk items with two B31 each."""
    rest = n - n_large
    a_bins = _chunks(large_ids, 6)
    b_bins = _chunks(small_ids, 2)
    n_c = _ceil_div(rest, 12)
    c_bins: list[list[int]] = [[] for _ in range(n_c)]
    for batch in c_labels:
        ids = by_batch.get(batch, [])
        head = 6 * len(a_bins)
        for b, chunk in enumerate(_chunks(ids[:head], 6)):
            a_bins[b].extend(chunk)
        for b, chunk in enumerate(_chunks(ids[head:], 12)):
            if b >= n_c:
                raise InfeasibleConstruction("third-branch trunk overflow")
            c_bins[b].extend(chunk)
    b31 = list(by_batch.get("B31", []))
    for bins in (b_bins, c_bins):
        for b in bins:
            take, b31 = b31[:2], b31[2:]
            b.extend(take)
    if b31:
        raise InfeasibleConstruction(f"{len(b31)} B31 items left unpacked")
    return a_bins + b_bins + c_bins


def _third_branch_second(by_batch, large_ids, small_ids, c_labels, n, n_large):
    """Bins for the second stop of the third continuation: halves of the
    previous construction, each topped up with one B32."""
    rest = n - n_large
    a_bins = _chunks(large_ids, 3)
    b_bins = [[i] for i in small_ids]
    n_c = _ceil_div(rest, 6)
    c_bins: list[list[int]] = [[] for _ in range(n_c)]
    for batch in c_labels:
        ids = by_batch.get(batch, [])
        head = 3 * len(a_bins)
        for b, chunk in enumerate(_chunks(ids[:head], 3)):
            a_bins[b].extend(chunk)
        for b, chunk in enumerate(_chunks(ids[head:], 6)):
            if b >= n_c:
                raise InfeasibleConstruction("third-branch trunk overflow")
            c_bins[b].extend(chunk)
    b31 = list(by_batch.get("B31", []))
    for bins in (b_bins, c_bins):
        for b in bins:
            take, b31 = b31[:1], b31[1:]
            b.extend(take)
    if b31:
        raise InfeasibleConstruction(f"{len(b31)} B31 items left unpacked")
    all_bins = a_bins + b_bins + c_bins
    b32 = list(by_batch.get("B32", []))
    if len(b32) > len(all_bins):
        raise InfeasibleConstruction("more B32 items than bins")
    for b, item_id in zip(all_bins, b32):
        b.append(item_id)
    return all_bins


def validate_solution(
    solution: OfflineSolution,
    items: Iterable[Item],
    ctx: LayeredContext,
    cap: Optional[LayeredValue] = None,
) -> None:
    """Exact feasibility (every bin at most cap) and exact coverage (every
    presented item in exactly one bin)."""
    cap = cap if cap is not None else ctx.one
    sizes = {it.id: it.size for it in items}
    packed: list[int] = []
    for b in solution.bins:
        if not b:
            raise InfeasibleConstruction("empty bin in solution")
        load = ctx.sum(sizes[i] for i in b)
        if load > cap:
            raise InfeasibleConstruction(
                f"bin over capacity at stop {solution.label}: {load!r}"
            )
        packed.extend(b)
    if sorted(packed) != sorted(sizes):
        raise InfeasibleConstruction("solution does not cover the items exactly once")


def exact_opt(sizes: Sequence[LayeredValue]) -> int:
    """True minimum bin count by exhaustive search; intended for <= 12 items."""
    if len(sizes) > 12:
        raise ValueError("exact_opt is limited to 12 items")
    if not sizes:
        return 0
    ctx = sizes[0].ctx
    order = sorted(sizes, reverse=True)
    best = len(order)
    remaining: list[LayeredValue] = []

    def structural(v: LayeredValue):
        return (v.base, tuple(sorted(v.atoms.items())))

    def recurse(i: int) -> None:
        nonlocal best
        if len(remaining) >= best:
            return
        if i == len(order):
            best = len(remaining)
            return
        item = order[i]
        seen = set()
        for b, rem in enumerate(remaining):
            key = structural(rem)
            if key in seen:
                continue
            seen.add(key)
            if item <= rem:
                remaining[b] = rem - item
                recurse(i + 1)
                remaining[b] = rem
        if len(remaining) + 1 < best:
            remaining.append(ctx.one - item)
            recurse(i + 1)
            remaining.pop()

    recurse(0)
    return best
