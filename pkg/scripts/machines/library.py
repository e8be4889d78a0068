"""Small named transducers used as building blocks and test pools."""

from collections.abc import Sequence

from errors import DomainError

from .base import DetTransducer, ZxTransducer


def identity(n: int, name: str = "a1") -> DetTransducer:
    return DetTransducer(
        n,
        (name,),
        {(x, name): name for x in range(n)},
        {(x, name): (x,) for x in range(n)},
    )


def shift_transducer(n: int) -> DetTransducer:
    """Sigma_n: state a_{i+1} remembers the previous letter i and writes it."""
    states = tuple(f"a{i + 1}" for i in range(n))
    transition = {}
    output = {}
    for i, q in enumerate(states):
        for x in range(n):
            transition[(x, q)] = states[x]
            output[(x, q)] = (i,)
    return DetTransducer(n, states, transition, output)


def permutation_transducer(n: int, sigma: Sequence[int], name: str = "p") -> DetTransducer:
    """Single-state machine applying the letter permutation sigma."""
    if sorted(sigma) != list(range(n)):
        raise DomainError(f"Not a permutation of {n} letters: {list(sigma)}")
    return DetTransducer(
        n,
        (name,),
        {(x, name): name for x in range(n)},
        {(x, name): (sigma[x],) for x in range(n)},
    )


def conditional_permutation(n: int, marker: int, sigma: Sequence[int]) -> DetTransducer:
    """
    Apply sigma to the current letter iff the previous letter was the marker.

    sigma must fix the marker so the condition reads the same on input and
    output. The result is a two-state synchronous machine.
    """
    if sorted(sigma) != list(range(n)):
        raise DomainError(f"Not a permutation of {n} letters: {list(sigma)}")
    if sigma[marker] != marker:
        raise DomainError(f"Permutation must fix the marker letter {marker}")
    after, other = "c", "o"
    transition = {}
    output = {}
    for x in range(n):
        target = after if x == marker else other
        transition[(x, after)] = target
        transition[(x, other)] = target
        output[(x, after)] = (sigma[x],)
        output[(x, other)] = (x,)
    return DetTransducer(n, (after, other), transition, output)


def zx(n: int, x: tuple[int, ...]) -> ZxTransducer:
    return ZxTransducer(n, x)


def transposition(n: int, a: int, b: int) -> list[int]:
    sigma = list(range(n))
    sigma[a], sigma[b] = b, a
    return sigma


# (state, letter) -> (target, output) for the six-state binary example whose
# 0-loop state a1 is not a homeomorphism state.
_INCLUSION_EDGES = {
    ("a1", 0): ("a1", (0,)),
    ("a1", 1): ("a2", ()),
    ("a2", 0): ("a3", (1, 1, 0)),
    ("a2", 1): ("a4", (0,)),
    ("a3", 0): ("a1", ()),
    ("a3", 1): ("a5", ()),
    ("a4", 0): ("a3", (0, 1, 0)),
    ("a4", 1): ("a6", (1, 1, 1)),
    ("a5", 0): ("a3", (1, 0)),
    ("a5", 1): ("a4", ()),
    ("a6", 0): ("a3", (0,)),
    ("a6", 1): ("a6", (1,)),
}


def inclusion_example() -> DetTransducer:
    """An element of L_2 = K_2 that is not in D_2."""
    states = tuple(sorted({q for q, _ in _INCLUSION_EDGES}))
    return DetTransducer(
        2,
        states,
        {(x, q): target for (q, x), (target, _) in _INCLUSION_EDGES.items()},
        {(x, q): out for (q, x), (_, out) in _INCLUSION_EDGES.items()},
    )
