"""Reference algorithm behavior on hand-checked sequences."""

from fractions import Fraction

from conftest import play_sequence

from packbound.algorithms import (
    Alternating,
    AlwaysNewBin,
    BestFit,
    FirstFit,
    Harmonic,
    NeverNewBin,
    NextFit,
    SeededRandom,
    make_algorithm,
)

F = Fraction


def bins_of(state):
    return state.bins


def test_next_fit_three_large():
    state, _ = play_sequence(NextFit(), [F(6, 10)] * 3)
    assert len(state) == 3


def test_next_fit_ignores_older_bins():
    state, _ = play_sequence(NextFit(), [F(3, 10), F(3, 10), F(6, 10), F(3, 10)])
    assert bins_of(state) == [[0, 1], [2, 3]]


def test_first_fit_pairs():
    state, _ = play_sequence(FirstFit(), [F(6, 10), F(3, 10), F(6, 10), F(3, 10)])
    assert bins_of(state) == [[0, 1], [2, 3]]


def test_first_fit_halves():
    state, _ = play_sequence(FirstFit(), [F(1, 2)] * 3)
    assert len(state) == 2


def _state_with_loads(loads):
    from packbound.core import Item, PackingState
    from packbound.layered import LayeredContext

    ctx = LayeredContext(10**6)
    state = PackingState(ctx)
    for i, load in enumerate(loads):
        state.place(Item(i, "C2", ctx.rational(load), "trunk"), i)
    return ctx, state


def test_best_fit_prefers_fullest():
    ctx, state = _state_with_loads([F(3, 10), F(5, 10)])
    assert BestFit().choose(ctx.rational(F(4, 10)), state.remaining) == 1


def test_best_fit_tie_breaks_low():
    ctx, state = _state_with_loads([F(1, 2), F(1, 2)])
    assert BestFit().choose(ctx.rational(F(4, 10)), state.remaining) == 0


def test_best_fit_opens_when_nothing_fits():
    ctx, state = _state_with_loads([F(3, 10), F(5, 10)])
    assert BestFit().choose(ctx.rational(F(9, 10)), state.remaining) == 2


def test_harmonic_class_one():
    state, _ = play_sequence(Harmonic(3), [F(6, 10)] * 2)
    assert len(state) == 2


def test_harmonic_class_two_pairs():
    state, _ = play_sequence(Harmonic(3), [F(4, 10)] * 3)
    assert bins_of(state) == [[0, 1], [2]]


def test_harmonic_small_class_next_fit():
    # sizes of 0.21 are small for h=3; next-fit packs four per bin
    state, _ = play_sequence(Harmonic(3), [F(21, 100)] * 10)
    assert [len(b) for b in bins_of(state)] == [4, 4, 2]
    # exact fifths fill a bin to exactly 1
    state, _ = play_sequence(Harmonic(3), [F(1, 5)] * 10)
    assert [len(b) for b in bins_of(state)] == [5, 5]


def test_harmonic_keeps_classes_apart():
    state, _ = play_sequence(Harmonic(3), [F(4, 10), F(2, 10), F(4, 10), F(2, 10)])
    assert bins_of(state) == [[0, 2], [1, 3]]


def test_stress_always_new_bin():
    state, _ = play_sequence(AlwaysNewBin(), [F(1, 10)] * 5)
    assert len(state) == 5


def test_stress_never_new_bin_scans_from_newest():
    state, choices = play_sequence(NeverNewBin(), [F(4, 10), F(4, 10), F(3, 10)])
    # both bins fit 0.3; the newer one wins
    assert choices == [0, 0, 1] or choices[2] == 1


def test_stress_alternating():
    # odd steps open, even steps first-fit
    state, choices = play_sequence(Alternating(), [F(2, 10)] * 4)
    assert choices == [0, 0, 1, 0]


def test_seeded_random_deterministic():
    a, b = SeededRandom(42), SeededRandom(42)
    sizes = [F(i % 5 + 1, 10) for i in range(40)]
    _, ca = play_sequence(a, sizes)
    _, cb = play_sequence(b, sizes)
    assert ca == cb


def test_snapshot_restore_roundtrip():
    for alg in (NextFit(), FirstFit(), BestFit(), Harmonic(4), Alternating(), SeededRandom(1)):
        sizes = [F(3, 10), F(2, 10), F(6, 10), F(2, 10), F(5, 10)]
        state, _ = play_sequence(alg, sizes)
        snap = alg.snapshot()
        probe = state.ctx.rational(F(4, 10))
        first = alg.choose(probe, state.remaining)  # disturbs internal state
        alg.restore(snap)
        again = alg.choose(probe, state.remaining)
        assert again == first, alg.name


def test_make_algorithm_names():
    assert make_algorithm("harmonic", h=5).name == "harmonic(5)"
    assert make_algorithm("seeded-random", seed=9).name == "seeded-random(9)"
    assert make_algorithm("first-fit").fresh().name == "first-fit"
