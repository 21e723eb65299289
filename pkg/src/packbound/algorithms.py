"""Deterministic online bin-packing algorithms used as adversary subjects.

All tie-breaks are fixed (lowest index unless stated otherwise) so that every
algorithm is reproducible bit-for-bit, and snapshot/restore round-trips are
exact.  Harmonic classifies by exact comparison against the rationals 1/i,
which matters because adversarial sizes sit just past those boundaries.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .core import OnlineAlgorithm
from .layered import LayeredValue


class NextFit(OnlineAlgorithm):
    """Keep only the most recently opened bin active."""

    name = "next-fit"

    def choose(self, size, remaining):
        n = len(remaining)
        if n and size <= remaining[n - 1]:
            return n - 1
        return n


class FirstFit(OnlineAlgorithm):
    """Lowest-indexed bin that fits, else a new bin."""

    name = "first-fit"

    def choose(self, size, remaining):
        for i, rem in enumerate(remaining):
            if size <= rem:
                return i
        return len(remaining)


class BestFit(OnlineAlgorithm):
    """Feasible bin with maximal load (minimal remaining); ties to lowest index."""

    name = "best-fit"

    def choose(self, size, remaining):
        best = None
        best_rem = None
        for i, rem in enumerate(remaining):
            if size <= rem and (best_rem is None or rem < best_rem):
                best, best_rem = i, rem
        return best if best is not None else len(remaining)


class Harmonic(OnlineAlgorithm):
    """Classic harmonic algorithm with h classes.

    Items in (1/(i+1), 1/i] belong to class i < h and are packed i per bin
    into bins of their own class; items of size <= 1/h form the small class,
    packed by next-fit among small-class bins only.
    """

    name = "harmonic"

    def __init__(self, h: int = 7):
        if h < 3:
            raise ValueError("harmonic needs h >= 3")
        self.h = h
        self.open_bin: dict[int, tuple[int, int]] = {}  # class -> (bin idx, count)
        self.small_bin: Optional[int] = None
        self.name = f"harmonic({h})"

    def _classify(self, size: LayeredValue) -> int:
        """Class index in 1..h-1, or h for the small class."""
        ctx = size.ctx
        for i in range(1, self.h):
            if size > ctx.rational(1, i + 1):
                return i
        return self.h

    def choose(self, size, remaining):
        cls = self._classify(size)
        n = len(remaining)
        if cls == self.h:
            if self.small_bin is not None and size <= remaining[self.small_bin]:
                return self.small_bin
            self.small_bin = n
            return n
        open_entry = self.open_bin.get(cls)
        if open_entry is not None:
            idx, count = open_entry
            if count + 1 < cls:
                self.open_bin[cls] = (idx, count + 1)
            else:
                del self.open_bin[cls]
            return idx
        if cls > 1:
            self.open_bin[cls] = (n, 1)
        return n

    def snapshot(self):
        return (dict(self.open_bin), self.small_bin)

    def restore(self, snap):
        self.open_bin = dict(snap[0])
        self.small_bin = snap[1]

    def fresh(self):
        return Harmonic(self.h)


# -- stress algorithms: legal but deliberately extreme placement policies ----


class AlwaysNewBin(OnlineAlgorithm):
    """Opens a fresh bin for every single item."""

    name = "always-new-bin"

    def choose(self, size, remaining):
        return len(remaining)


class NeverNewBin(OnlineAlgorithm):
    """Avoids opening whenever any existing bin fits; scans from the newest
    bin down so it diverges from first-fit."""

    name = "never-new-bin"

    def choose(self, size, remaining):
        for i in range(len(remaining) - 1, -1, -1):
            if size <= remaining[i]:
                return i
        return len(remaining)


class Alternating(OnlineAlgorithm):
    """Alternates between opening a new bin and first-fit placement."""

    name = "alternating"

    def __init__(self):
        self.step = 0

    def choose(self, size, remaining):
        self.step += 1
        if self.step % 2 == 1:
            return len(remaining)
        for i, rem in enumerate(remaining):
            if size <= rem:
                return i
        return len(remaining)

    def snapshot(self):
        return self.step

    def restore(self, snap):
        self.step = snap


class SeededRandom(OnlineAlgorithm):
    """Draws a bin (or "open new") uniformly from a seeded PRNG and falls
    back to opening when the drawn bin does not fit; deterministic for a
    fixed seed."""

    name = "seeded-random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)
        self.name = f"seeded-random({seed})"

    def choose(self, size, remaining):
        n = len(remaining)
        drawn = self.rng.randrange(n + 1)
        if drawn < n and size <= remaining[drawn]:
            return drawn
        return n

    def snapshot(self):
        return self.rng.getstate()

    def restore(self, snap):
        self.rng.setstate(snap)

    def fresh(self):
        return SeededRandom(self.seed)


STANDARD_ALGORITHMS = ("next-fit", "first-fit", "best-fit", "harmonic")
STRESS_ALGORITHMS = ("always-new-bin", "never-new-bin", "alternating", "seeded-random")


def make_algorithm(name: str, h: int = 7, seed: int = 0) -> OnlineAlgorithm:
    """Instantiate an algorithm by CLI name."""
    if name == "next-fit":
        return NextFit()
    if name == "first-fit":
        return FirstFit()
    if name == "best-fit":
        return BestFit()
    if name == "harmonic":
        return Harmonic(h)
    if name == "always-new-bin":
        return AlwaysNewBin()
    if name == "never-new-bin":
        return NeverNewBin()
    if name == "alternating":
        return Alternating()
    if name == "seeded-random":
        return SeededRandom(seed)
    raise ValueError(f"unknown algorithm {name!r}")
