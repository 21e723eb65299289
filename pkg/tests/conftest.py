from fractions import Fraction

from packbound.core import Item, PackingState
from packbound.layered import LayeredContext


def play_sequence(algorithm, sizes, ctx=None, batch="C2"):
    """Feed raw sizes to an algorithm through a fresh packing state."""
    ctx = ctx or LayeredContext(10**6)
    state = PackingState(ctx)
    choices = []
    for i, size in enumerate(sizes):
        if isinstance(size, (int, Fraction, str)):
            size = ctx.rational(Fraction(size))
        choice = algorithm.choose(size, state.remaining)
        state.place(Item(i, batch, size, "trunk"), choice)
        choices.append(choice)
    return state, choices
