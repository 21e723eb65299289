"""Items, bins, online-algorithm contract, and transcripts of play.

The harness owns the packing state; an online algorithm only ever sees the
size of the incoming item plus the remaining capacities of the bins it has
opened so far, and returns a bin index (len(remaining) means "open a new
bin").  Transcripts record every placement together with per-batch bin
counters, from which all cost statistics are derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .layered import LayeredContext, LayeredValue

TRUNK_BRANCH = "trunk"
BRANCHES = ("branch1", "branch2", "branch3")
BRANCH_BATCHES = {
    "branch1": ("B11",),
    "branch2": ("B21", "B22"),
    "branch3": ("B31", "B32"),
}
B_LABELS = ("B11", "B21", "B22", "B31", "B32")


class OverflowRejection(RuntimeError):
    """An algorithm returned a placement that would push a bin above load 1."""


def batch_branch(batch: str) -> str:
    """Branch a batch belongs to; C-batches and the adaptive batch are trunk."""
    for branch, batches in BRANCH_BATCHES.items():
        if batch in batches:
            return branch
    return TRUNK_BRANCH


@dataclass(frozen=True)
class Item:
    """One presented item.  Algorithms never see this record, only the size."""

    id: int
    batch: str
    size: LayeredValue
    branch: str
    large: Optional[bool] = None  # set for adaptive-batch items only

    def __post_init__(self):
        if batch_branch(self.batch) != self.branch:
            raise ValueError(f"batch {self.batch} cannot live on {self.branch}")


class OnlineAlgorithm:
    """Behavioral contract for deterministic online bin-packing algorithms.

    choose() must return an index in 0..len(remaining); returning
    len(remaining) opens a new bin.  snapshot()/restore() expose internal
    state so the harness can fork play at branch points; fresh() returns an
    unused instance with the same configuration for replay-based forking.
    """

    name = "abstract"

    def choose(self, size: LayeredValue, remaining: Sequence[LayeredValue]) -> int:
        raise NotImplementedError

    def snapshot(self):
        return None

    def restore(self, snap) -> None:
        pass

    def fresh(self) -> "OnlineAlgorithm":
        return type(self)()


class PackingState:
    """Open bins with exact loads and remaining capacities."""

    def __init__(self, ctx: LayeredContext):
        self.ctx = ctx
        self.bins: list[list[int]] = []
        self.loads: list[LayeredValue] = []
        self.remaining: list[LayeredValue] = []
        self.opened_in: list[str] = []

    def __len__(self) -> int:
        return len(self.bins)

    def place(self, item: Item, choice: int) -> None:
        """Apply one placement; rejects anything that would exceed load 1."""
        n = len(self.bins)
        if not 0 <= choice <= n:
            raise OverflowRejection(
                f"bin index {choice} out of range 0..{n} for item {item.id}"
            )
        if choice == n:
            if self.ctx.one < item.size:
                raise OverflowRejection(f"item {item.id} does not fit an empty bin")
            self.bins.append([item.id])
            self.loads.append(item.size)
            self.remaining.append(self.ctx.one - item.size)
            self.opened_in.append(item.batch)
            return
        if item.size > self.remaining[choice]:
            raise OverflowRejection(
                f"item {item.id} overflows bin {choice} "
                f"(remaining {self.remaining[choice]!r}, size {item.size!r})"
            )
        self.bins[choice].append(item.id)
        self.loads[choice] = self.loads[choice] + item.size
        self.remaining[choice] = self.remaining[choice] - item.size
        return

    def fork(self) -> "PackingState":
        """Independent copy sharing the immutable values."""
        child = PackingState(self.ctx)
        child.bins = [list(b) for b in self.bins]
        child.loads = list(self.loads)
        child.remaining = list(self.remaining)
        child.opened_in = list(self.opened_in)
        return child


@dataclass
class Transcript:
    """Complete history of one algorithm over the whole input tree.

    Trunk placements are shared verbatim by all three branches; bin ids below
    len(trunk_state) refer to the same bin in every branch.
    """

    t: int
    n: int
    items: dict[int, Item]
    trunk_rows: list[tuple[int, str, int]]
    branch_rows: dict[str, list[tuple[int, str, int]]]
    trunk_state: PackingState
    branch_states: dict[str, PackingState]
    costs: dict[str, int]
    trunk_labels: list[str] = field(default_factory=list)

    def stopping_labels(self) -> list[str]:
        return list(self.trunk_labels) + list(B_LABELS)

    def all_rows(self) -> list[tuple[int, str, int]]:
        rows = list(self.trunk_rows)
        for branch in BRANCHES:
            rows.extend(self.branch_rows[branch])
        return rows


@dataclass
class TranscriptStats:
    """Bins-opened counters and derived costs, recomputed from raw rows."""

    nu: dict[str, int]
    n_large: int
    delta: int
    costs: dict[str, int]


def compute_stats(transcript: Transcript) -> TranscriptStats:
    """Replay the placement rows and derive every statistic from scratch.

    Serves as an oracle against the counters kept during play: bins are
    re-identified by their first appearance, costs by distinct bins seen up
    to each stopping point.  Batches are walked in presentation order so
    that empty batches (possible on the third continuation) still get a
    stopping-point cost.
    """
    trunk_labels = transcript.trunk_labels
    nu = {lab: 0 for lab in trunk_labels + list(B_LABELS)}
    costs: dict[str, int] = {}

    def group(rows):
        grouped: dict[str, list[int]] = {}
        for _, batch, bin_id in rows:
            grouped.setdefault(batch, []).append(bin_id)
        return grouped

    seen_trunk: set[int] = set()
    trunk_groups = group(transcript.trunk_rows)
    for lab in trunk_labels:
        for bin_id in trunk_groups.get(lab, []):
            if bin_id not in seen_trunk:
                seen_trunk.add(bin_id)
                nu[lab] += 1
        costs[lab] = len(seen_trunk)

    for branch, rows in transcript.branch_rows.items():
        seen = set(seen_trunk)
        branch_groups = group(rows)
        for lab in BRANCH_BATCHES[branch]:
            for bin_id in branch_groups.get(lab, []):
                if bin_id not in seen:
                    seen.add(bin_id)
                    nu[lab] += 1
            costs[lab] = len(seen)

    n_large = sum(
        1
        for item in transcript.items.values()
        if item.batch == "A" and item.large
    )
    delta = sum(nu[lab] for lab in trunk_labels)
    return TranscriptStats(nu=nu, n_large=n_large, delta=delta, costs=costs)


def cost_formulas(t: int, nu: dict[str, int]) -> dict[str, int]:
    """Closed-form costs implied by the nu counters.

    Cost after the j-th trunk batch is the sum of nu over that batch and all
    earlier (smaller-item) batches; each branch batch adds its own openers on
    top of the full trunk.
    """
    trunk_labels = [f"C{j}" for j in range(t, 1, -1)] + ["A"]
    delta = sum(nu[lab] for lab in trunk_labels)
    out: dict[str, int] = {}
    running = 0
    for lab in trunk_labels:
        running += nu[lab]
        out[lab] = running
    out["B11"] = delta + nu["B11"]
    out["B21"] = delta + nu["B21"]
    out["B22"] = delta + nu["B21"] + nu["B22"]
    out["B31"] = delta + nu["B31"]
    out["B32"] = delta + nu["B31"] + nu["B32"]
    return out


def verify_partition(transcript: Transcript) -> bool:
    """Each branch view packs every presented item exactly once, and branch
    placements extend the trunk placements verbatim."""
    trunk_ids = [i for i, _, _ in transcript.trunk_rows]
    if sorted(trunk_ids) != sorted(
        i for b in transcript.trunk_state.bins for i in b
    ):
        return False
    n_trunk = len(transcript.trunk_state.bins)
    for branch in BRANCHES:
        st = transcript.branch_states[branch]
        for bid in range(n_trunk):
            prefix = transcript.trunk_state.bins[bid]
            if st.bins[bid][: len(prefix)] != prefix:
                return False
        ids = set(trunk_ids) | {i for i, _, _ in transcript.branch_rows[branch]}
        packed = [i for b in st.bins for i in b]
        if sorted(packed) != sorted(ids):
            return False
    return True
