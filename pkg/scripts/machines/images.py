"""State images as cone unions, input remainders and the inverse construction."""

from collections import deque
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass

import networkx as nx

from errors import (
    BoundExceededError,
    DomainError,
    FormatError,
    NotClopenError,
    NotInvertibleError,
)
from utils.logger import get_logger
from words import EMPTY, Word, format_word, is_prefix

from .base import DetTransducer, State, ZxTransducer
from .core import expand_configuration, minimize

logger = get_logger()

MAX_CONFIGURATIONS = 100_000

Successors = Callable[[Hashable], Iterable[tuple[Hashable, Word]]]


@dataclass(frozen=True)
class Antichain:
    """Pairwise prefix-incomparable words whose cones cover a clopen set."""
    words: tuple[Word, ...]

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def uniform_count(self, n: int) -> tuple[int, int]:
        """(s, D): the number of depth-D cones the antichain splits into."""
        depth = self.depth
        return sum(n ** (depth - len(w)) for w in self.words), depth

    def __len__(self) -> int:
        return len(self.words)


def default_remainder_bound(n: int, states: int, max_output: int) -> int:
    return (n + 1) * states * (1 + max_output)


def remainder_bound(T: DetTransducer) -> int:
    return default_remainder_bound(T.n, len(T.states), T.max_output_length)


def step_configuration(successors: Successors, config: frozenset, letter: int) -> frozenset:
    moved = ((node, owed[1:]) for node, owed in config if owed[0] == letter)
    return expand_configuration(successors, moved)


def cone_cover(successors: Successors, start: Hashable, n: int, bound: int) -> Antichain:
    """
    Minimal antichain whose cones union to the labels of infinite paths from start.

    Configurations record (node, label already written past the current
    prefix). A prefix is covered when the empty configuration can no longer
    be reached from it; a circuit of partially covered configurations means
    the set is not a finite union of cones.
    """
    root = expand_configuration(successors, [(start, EMPTY)])
    moves: dict[tuple[frozenset, int], frozenset] = {}
    g = nx.DiGraph()
    g.add_node(root)
    queue = deque([root])
    while queue:
        config = queue.popleft()
        if not config:
            continue
        for a in range(n):
            nxt = step_configuration(successors, config, a)
            moves[(config, a)] = nxt
            if nxt not in g:
                queue.append(nxt)
            g.add_edge(config, nxt)
        if len(g) > MAX_CONFIGURATIONS:
            raise BoundExceededError("configurations", MAX_CONFIGURATIONS)
    empty = frozenset()
    doomed = (nx.ancestors(g, empty) | {empty}) if empty in g else set()
    partial = doomed - {empty}
    if not nx.is_directed_acyclic_graph(g.subgraph(partial)):
        raise NotClopenError(
            f"Image of {start} is not a finite union of cones",
            {"state": str(start)},
        )
    words: list[Word] = []
    stack: list[tuple[frozenset, Word]] = [(root, EMPTY)]
    while stack:
        config, prefix = stack.pop()
        if not config:
            continue
        if config not in doomed:
            words.append(prefix)
            continue
        if len(prefix) >= bound:
            raise NotClopenError(
                f"Image of {start} not resolved within depth {bound}",
                {"state": str(start), "within_bound": bound},
            )
        for a in range(n):
            stack.append((moves[(config, a)], prefix + (a,)))
    logger.debug(f"cone_cover: {len(g)} configurations, {len(words)} cones from {start}")
    return Antichain(tuple(sorted(words)))


def image_antichain(T: DetTransducer, q: State, bound: int | None = None) -> Antichain:
    if bound is None:
        bound = remainder_bound(T)
    return cone_cover(T.successors, q, T.n, bound)


def uniform_cone_count(T: DetTransducer, q: State, bound: int | None = None) -> tuple[int, int]:
    return image_antichain(T, q, bound).uniform_count(T.n)


def reduce_antichain(words: Iterable[Word], n: int) -> Antichain:
    """Replace every complete sibling set {v0, ..., v(n-1)} by v, repeatedly."""
    current = set(words)
    changed = True
    while changed:
        changed = False
        parents = {w[:-1] for w in current if w}
        for parent in sorted(parents, key=len, reverse=True):
            children = {parent + (x,) for x in range(n)}
            if children <= current:
                current -= children
                current.add(parent)
                changed = True
    return Antichain(tuple(sorted(current)))


def _can_write(T: DetTransducer, q: State, owed: Word, memo: dict) -> bool:
    """Some infinite input from q produces output starting with owed."""
    key = (q, owed)
    if key not in memo:
        memo[key] = False
        result = False
        for x in T.letters:
            out = T.lam(x, q)
            if len(out) >= len(owed):
                result = out[:len(owed)] == owed
            elif owed[:len(out)] == out:
                result = _can_write(T, T.pi(x, q), owed[len(out):], memo)
            if result:
                break
        memo[key] = result
    return memo[key]


def remainder_L(T: DetTransducer, q: State, w: Word, bound: int | None = None) -> Word:
    """
    Longest input word shared by every input whose output from q lies in U_w.
    """
    if bound is None:
        bound = remainder_bound(T)
    memo: dict = {}
    read: list[int] = []
    written: Word = EMPTY
    state = q
    while len(written) < len(w):
        owed = w[len(written):]
        viable = []
        for x in T.letters:
            out = T.lam(x, state)
            if len(out) >= len(owed):
                ok = out[:len(owed)] == owed
            else:
                ok = owed[:len(out)] == out and _can_write(T, T.pi(x, state), owed[len(out):], memo)
            if ok:
                viable.append(x)
        if not viable:
            raise DomainError(
                f"Cone {format_word(w)} does not meet the image of {q}",
                {"state": q, "word": format_word(w)},
            )
        if len(viable) > 1:
            break
        x = viable[0]
        read.append(x)
        written += T.lam(x, state)
        state = T.pi(x, state)
        if len(read) > bound:
            raise BoundExceededError(
                "remainder", bound,
                f"Remainder of {format_word(w)} at {q} exceeded {bound} letters",
                {"state": q},
            )
    return tuple(read)


def inverse_state_name(w: Word, q: State) -> State:
    return f"({format_word(w)}|{q})"


def _settle(T: DetTransducer, w: Word, q: State, bound: int) -> tuple[Word, State, Word]:
    """Consume the forced input of U_w at q; returns (remainder, state, input read)."""
    u = remainder_L(T, q, w, bound)
    p, produced = T.run(q, u)
    if not is_prefix(produced, w):
        raise NotInvertibleError(
            f"Forced output {format_word(produced)} overshoots {format_word(w)} at {q}",
            {"state": q},
        )
    return w[len(produced):], p, u


def invert(T: DetTransducer, bound: int | None = None,
           max_states: int = 20_000) -> DetTransducer:
    """
    Inverse of a minimal strongly synchronizing transducer.

    States are pairs (w|q) with U_w inside the image of q and nothing forced
    yet. Reading a letter a consumes the input forced by U_{wa}.
    """
    M = minimize(T)
    if isinstance(M, ZxTransducer):
        raise NotInvertibleError("A Z_x transducer has no inverse", {"x": format_word(M.x)})
    if bound is None:
        bound = remainder_bound(M)
    try:
        seed = image_antichain(M, M.states[0], bound).words[0]
        w0, q0, _ = _settle(M, seed, M.states[0], bound)
        index = {(w0, q0): inverse_state_name(w0, q0)}
        queue = deque([(w0, q0)])
        transition = {}
        output = {}
        while queue:
            w, q = queue.popleft()
            name = index[(w, q)]
            for a in M.letters:
                v, p, u = _settle(M, w + (a,), q, bound)
                if len(v) > bound:
                    raise BoundExceededError("remainder", bound, details={"state": name})
                if (v, p) not in index:
                    index[(v, p)] = inverse_state_name(v, p)
                    queue.append((v, p))
                    if len(index) > max_states:
                        raise BoundExceededError("inverse states", max_states)
                transition[(a, name)] = index[(v, p)]
                output[(a, name)] = u
        raw = DetTransducer(M.n, tuple(index.values()), transition, output)
    except (DomainError, FormatError) as e:
        raise NotInvertibleError(f"Not invertible: {e.message}", e.details) from e
    logger.debug(f"invert: {len(raw.states)} raw inverse states")
    result = minimize(raw)
    if isinstance(result, ZxTransducer):
        raise NotInvertibleError("Inverse construction degenerated to a Z_x machine")
    return result


def is_homeomorphism_state(T: DetTransducer, q: State, bound: int | None = None) -> bool:
    return image_antichain(T, q, bound).words == (EMPTY,)


def is_automaton_invertible(T: DetTransducer) -> bool:
    """Every state permutes the alphabet letterwise."""
    if not T.is_synchronous:
        raise DomainError("Automaton invertibility is defined for synchronous transducers")
    letters = list(T.letters)
    return all(
        sorted(T.lam(x, q)[0] for x in T.letters) == letters for q in T.states
    )
