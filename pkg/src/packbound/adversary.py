"""Adaptive adversary: generates the input tree against a given algorithm.

The trunk presents the fixed-size batches and then the adaptive batch, whose
perturbation exponents are chosen by bisection so that items placed into
empty bins ("openers") end up with perturbations more than k times larger
than those of all other items.  Play then forks into the three continuations
from a snapshot of both the algorithm and the packing state, and every
stopping point is scored against its optimum upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import analysis, optbounds
from .core import (
    BRANCH_BATCHES,
    BRANCHES,
    Item,
    OnlineAlgorithm,
    PackingState,
    Transcript,
    TranscriptStats,
    batch_branch,
    compute_stats,
    cost_formulas,
    verify_partition,
)
from .inputs import (
    ConstructionParams,
    a_item_size,
    b_item_counts,
    b_item_sizes,
    c_batch_sizes,
)
from .layered import LayeredContext, LayeredValue


class IntervalExhausted(RuntimeError):
    """The exponent interval ran out of room; cannot happen with the
    standard initial interval."""


class ReplayMismatch(RuntimeError):
    """A replayed prefix diverged from the recorded trunk placements."""


class AItemGenerator:
    """Bisection state for the adaptive perturbation exponents.

    Exponents live strictly inside (2^(n+2), 2^(n+3)).  Each item takes the
    midpoint of the open interval; classifying it as an opener raises the
    lower end past it, otherwise the upper end drops below it.  This keeps
    every opener exponent at least two below every non-opener exponent, so
    opener perturbations exceed non-opener ones by a factor above k.
    """

    def __init__(self, n_items: int, k: int):
        if n_items < 1:
            raise ValueError("need at least one item")
        if k < 5:
            raise ValueError("k must be at least 5 for the 4*gamma separation")
        self.n_items = n_items
        self.k = k
        self.lo = 2 ** (n_items + 2)
        self.hi = 2 ** (n_items + 3)
        self.issued: list[tuple[int, bool]] = []
        self._pending: Optional[int] = None

    def next_exponent(self) -> int:
        if self._pending is not None:
            raise RuntimeError("previous item has not been classified yet")
        if len(self.issued) >= self.n_items:
            raise IntervalExhausted("all items already issued")
        if self.hi - self.lo < 2:
            raise IntervalExhausted(f"empty exponent interval ({self.lo}, {self.hi})")
        self._pending = (self.lo + self.hi) // 2
        return self._pending

    def classify(self, opened_new_bin: bool) -> None:
        e = self._pending
        if e is None:
            raise RuntimeError("no pending item to classify")
        self.issued.append((e, opened_new_bin))
        if opened_new_bin:
            self.lo = e + 1
        else:
            self.hi = e - 1
        self._pending = None

    @property
    def n_large(self) -> int:
        return sum(1 for _, large in self.issued if large)

    def large_exponents(self) -> list[int]:
        return [e for e, large in self.issued if large]

    def small_exponents(self) -> list[int]:
        return [e for e, large in self.issued if not large]

    def gamma_exponent(self) -> int:
        """Exponent of gamma, the largest non-opener perturbation; with no
        non-openers, one step below the whole remaining interval."""
        smalls = self.small_exponents()
        return min(smalls) if smalls else self.hi + 1

    def check_invariants(self, ctx: Optional[LayeredContext] = None) -> dict[str, bool]:
        """Interval invariant, strict gap property, and the value range, all
        decided exactly."""
        larges, smalls = self.large_exponents(), self.small_exponents()
        interval_ok = all(e <= self.lo - 1 for e in larges) and all(
            e >= self.hi + 1 for e in smalls
        )
        lo0, hi0 = 2 ** (self.n_items + 2), 2 ** (self.n_items + 3)
        range_ok = all(lo0 < e < hi0 for e, _ in self.issued)
        if larges and smalls:
            if ctx is None:
                ctx = LayeredContext(self.k)
            min_large = ctx.atom(max(larges), 1)
            k_max_small = ctx.atom(min(smalls), self.k)
            gap_ok = min_large > k_max_small
        else:
            gap_ok = True
        return {
            "interval_invariant": interval_ok,
            "exponents_in_range": range_ok,
            "gap_property": gap_ok,
        }


def gamma_value(gen: AItemGenerator, ctx: LayeredContext) -> LayeredValue:
    """The separating value gamma as a single perturbation atom."""
    return ctx.atom(gen.gamma_exponent(), 1)


def verify_gamma(
    gen: AItemGenerator, ctx: LayeredContext, eps: Fraction
) -> dict[str, bool]:
    """gamma bounds every non-opener perturbation from above, sits a factor
    four below every opener perturbation, and stays below eps/4."""
    gamma = gamma_value(gen, ctx)
    four_gamma = gamma * 4
    smalls_ok = all(ctx.atom(e, 1) <= gamma for e in gen.small_exponents())
    larges_ok = all(ctx.atom(e, 1) > four_gamma for e in gen.large_exponents())
    below_eps = gamma < ctx.rational(eps / 4)
    return {
        "gamma_bounds_smalls": smalls_ok,
        "gamma_separates_larges": larges_ok,
        "gamma_below_quarter_eps": below_eps,
    }


@dataclass
class StoppingPoint:
    label: str
    alg_cost: int
    opt_bound: Fraction
    ratio: Fraction


@dataclass
class AdversaryReport:
    """Scores and verification results for one algorithm over the tree."""

    algorithm: str
    t: int
    n: int
    stopping_points: list[StoppingPoint]
    n_large: int
    n31_issued: int
    n32_issued: int
    gamma_exponent: int
    max_ratio: Fraction
    checks: dict[str, bool] = field(default_factory=dict)
    chain: dict[str, Fraction] = field(default_factory=dict)

    @property
    def all_checks_pass(self) -> bool:
        return all(self.checks.values())


def run_tree(
    params: ConstructionParams,
    algorithm: OnlineAlgorithm,
    mode: str = "snapshot",
    verify: bool = True,
    check_constructions: bool = True,
) -> tuple[Transcript, AdversaryReport]:
    """Play the whole input tree against one algorithm and verify the run.

    mode="snapshot" forks branch play via algorithm snapshot/restore;
    mode="replay" re-feeds the recorded trunk to a fresh instance instead,
    asserting the placements match (determinism check).
    """
    if mode not in ("snapshot", "replay"):
        raise ValueError("mode must be 'snapshot' or 'replay'")
    t, n, eps = params.t, params.n, params.eps
    ctx = params.context()
    state = PackingState(ctx)
    items: dict[int, Item] = {}
    trunk_rows: list[tuple[int, str, int]] = []
    costs: dict[str, int] = {}
    trunk_labels = [lab for lab, _ in c_batch_sizes(params)] + ["A"]
    next_id = 0

    def feed(alg, st, rows, batch, size, large=None):
        nonlocal next_id
        choice = alg.choose(size, st.remaining)
        opened = choice == len(st.bins)
        item = Item(next_id, batch, size, batch_branch(batch), large)
        next_id += 1
        st.place(item, choice)
        items[item.id] = item
        rows.append((item.id, batch, choice))
        return opened

    for label, frac in c_batch_sizes(params):
        size = ctx.rational(frac)
        for _ in range(n):
            feed(algorithm, state, trunk_rows, label, size)
        costs[label] = len(state.bins)

    gen = AItemGenerator(n, params.k)
    for _ in range(n):
        e = gen.next_exponent()
        size = a_item_size(params, ctx, e)
        choice = algorithm.choose(size, state.remaining)
        opened = choice == len(state.bins)
        item = Item(next_id, "A", size, "trunk", opened)
        next_id += 1
        state.place(item, choice)
        items[item.id] = item
        trunk_rows.append((item.id, "A", choice))
        gen.classify(opened)
    costs["A"] = len(state.bins)

    n_large = gen.n_large
    gamma = gamma_value(gen, ctx)
    bsizes = b_item_sizes(eps, gamma, ctx)
    bcounts = b_item_counts(n, n_large)

    branch_states: dict[str, PackingState] = {}
    branch_rows: dict[str, list[tuple[int, str, int]]] = {br: [] for br in BRANCHES}
    alg_snapshot = algorithm.snapshot() if mode == "snapshot" else None
    for branch in BRANCHES:
        if mode == "snapshot":
            algorithm.restore(alg_snapshot)
            alg, bstate = algorithm, state.fork()
        else:
            alg, bstate = algorithm.fresh(), PackingState(ctx)
            for item_id, batch, bin_id in trunk_rows:
                it = items[item_id]
                choice = alg.choose(it.size, bstate.remaining)
                if choice != bin_id:
                    raise ReplayMismatch(
                        f"{alg.name}: replayed item {item_id} to bin {choice}, "
                        f"recorded {bin_id}"
                    )
                bstate.place(it, choice)
        for batch in BRANCH_BATCHES[branch]:
            size = bsizes[batch]
            for _ in range(bcounts[batch]):
                feed(alg, bstate, branch_rows[branch], batch, size)
            costs[batch] = len(bstate.bins)
        branch_states[branch] = bstate

    transcript = Transcript(
        t=t,
        n=n,
        items=items,
        trunk_rows=trunk_rows,
        branch_rows=branch_rows,
        trunk_state=state,
        branch_states=branch_states,
        costs=costs,
        trunk_labels=trunk_labels,
    )

    report = _build_report(
        params, algorithm.name, transcript, gen, gamma, bcounts,
        verify=verify, check_constructions=check_constructions,
    )
    return transcript, report


def _build_report(
    params: ConstructionParams,
    algorithm_name: str,
    transcript: Transcript,
    gen: AItemGenerator,
    gamma: LayeredValue,
    bcounts: dict[str, int],
    verify: bool,
    check_constructions: bool,
) -> AdversaryReport:
    t, n = params.t, params.n
    n_large = gen.n_large
    stats = compute_stats(transcript)

    points = []
    for label in transcript.stopping_labels():
        cost = transcript.costs[label]
        bound = optbounds.opt_upper_bound(label, t, n, n_large)
        points.append(
            StoppingPoint(label, cost, bound, Fraction(cost) / bound)
        )
    max_ratio = max(p.ratio for p in points)

    report = AdversaryReport(
        algorithm=algorithm_name,
        t=t,
        n=n,
        stopping_points=points,
        n_large=n_large,
        n31_issued=bcounts["B31"],
        n32_issued=bcounts["B32"],
        gamma_exponent=gen.gamma_exponent(),
        max_ratio=max_ratio,
    )
    if not verify:
        return report

    ctx = transcript.trunk_state.ctx
    checks = report.checks
    checks.update(gen.check_invariants(ctx))
    checks.update(verify_gamma(gen, ctx, params.eps))
    checks["nu1_equals_n_large"] = stats.nu["A"] == n_large
    checks["sizes_in_open_interval"] = _a_sizes_in_interval(transcript, params, ctx)
    checks["cost_formulas_match_replay"] = (
        cost_formulas(t, stats.nu) == stats.costs == transcript.costs
    )
    checks["branches_extend_trunk"] = verify_partition(transcript)

    wp = analysis.check_weight_price_inequality(transcript, stats)
    checks["weight_equals_price_sum"] = wp.equality
    checks["weight_below_price_bound"] = wp.inequality
    checks["per_bin_price_below_table"] = wp.per_bin_ok

    w_ref = analysis.w_star_fraction()
    mult = dict(analysis.multipliers(t, w_ref))
    mult_opt = sum(
        mult[p.label] * p.opt_bound for p in points
    )
    weight_over_opt = wp.total_weight.at(w_ref) / mult_opt
    finite_bound = analysis.bound_finite_t(t, w_ref, Fraction(n_large, n))
    report.chain = {
        "total_weight": wp.total_weight.at(w_ref),
        "multiplier_weighted_opt": mult_opt,
        "weight_over_opt": weight_over_opt,
        "finite_t_bound": finite_bound,
    }
    checks["ratio_chain"] = (
        max_ratio >= weight_over_opt >= finite_bound - Fraction(1, 100)
    )

    if check_constructions:
        checks["opt_constructions_feasible"] = _constructions_feasible(
            transcript, params, n_large, gamma, ctx
        )
    return report


def _a_sizes_in_interval(
    transcript: Transcript, params: ConstructionParams, ctx: LayeredContext
) -> bool:
    lo = ctx.rational((1 + params.eps) / 7)
    hi = ctx.rational((1 + 2 * params.eps) / 7)
    return all(
        lo < it.size < hi
        for it in transcript.items.values()
        if it.batch == "A"
    )


def items_at_stopping_point(transcript: Transcript, label: str) -> list[Item]:
    """All items presented when the input stops at the given point."""
    t = transcript.t
    if label.startswith("C"):
        j = int(label[1:])
        visible = {f"C{i}" for i in range(t, j - 1, -1)}
    elif label == "A":
        visible = {f"C{i}" for i in range(2, t + 1)} | {"A"}
    else:
        trunk = {f"C{i}" for i in range(2, t + 1)} | {"A"}
        prefix = {"B11": {"B11"}, "B21": {"B21"}, "B22": {"B21", "B22"},
                  "B31": {"B31"}, "B32": {"B31", "B32"}}[label]
        visible = trunk | prefix
    return [it for it in transcript.items.values() if it.batch in visible]


def _constructions_feasible(transcript, params, n_large, gamma, ctx) -> bool:
    for label in transcript.stopping_labels():
        try:
            optbounds.construct_solution(
                label,
                items_at_stopping_point(transcript, label),
                params.t,
                params.n,
                ctx,
                gamma=gamma,
            )
        except optbounds.InfeasibleConstruction:
            return False
    return True


def synthesize_items(
    params: ConstructionParams, n_large: int
) -> tuple[dict[int, Item], LayeredValue, LayeredContext]:
    """Fabricate a full item tree with a prescribed opener count, without
    running any algorithm; used to exercise the offline constructions over
    the whole range of n_large."""
    if not 0 <= n_large <= params.n:
        raise ValueError("n_large out of range")
    ctx = params.context()
    items: dict[int, Item] = {}
    next_id = 0
    for label, frac in c_batch_sizes(params):
        size = ctx.rational(frac)
        for _ in range(params.n):
            items[next_id] = Item(next_id, label, size, "trunk")
            next_id += 1
    gen = AItemGenerator(params.n, params.k)
    for i in range(params.n):
        e = gen.next_exponent()
        large = i < n_large
        items[next_id] = Item(next_id, "A", a_item_size(params, ctx, e), "trunk", large)
        next_id += 1
        gen.classify(large)
    gamma = gamma_value(gen, ctx)
    bsizes = b_item_sizes(params.eps, gamma, ctx)
    for batch, count in b_item_counts(params.n, n_large).items():
        for _ in range(count):
            items[next_id] = Item(
                next_id, batch, bsizes[batch], batch_branch(batch)
            )
            next_id += 1
    return items, gamma, ctx
