"""Synchronizing levels, forced states, cores and bisynchronization."""

from dataclasses import dataclass
from itertools import combinations

import networkx as nx
from sympy import eye, zeros

from errors import BoundExceededError, DomainError, NotSynchronizingError
from utils.logger import get_logger
from words import Word, enumerate_prime_classes, format_word

from .base import DetTransducer, NondetTransducer, State, product

logger = get_logger()


@dataclass(frozen=True)
class SyncCertificate:
    """Every word of length `level` drives every state of `machine` to one place."""
    level: int
    machine: DetTransducer

    def forced(self, w: Word) -> State:
        if len(w) < self.level:
            raise DomainError(
                f"Word {format_word(w)} is shorter than the synchronizing level {self.level}"
            )
        return self.machine.run(self.machine.states[0], w)[0]


@dataclass(frozen=True)
class LevelCheck:
    measured: int
    bound: int
    guaranteed: bool

    @property
    def holds(self) -> bool:
        return self.measured <= self.bound


def pair_graph(T: DetTransducer) -> nx.DiGraph:
    """Unordered pairs of distinct states, joined when a letter keeps them apart."""
    g = nx.DiGraph()
    for p, q in combinations(T.states, 2):
        g.add_node(frozenset((p, q)))
    for pair in list(g.nodes):
        p, q = tuple(pair)
        for x in T.letters:
            a, b = T.pi(x, p), T.pi(x, q)
            if a != b:
                g.add_edge(pair, frozenset((a, b)), letter=x)
    return g


def sync_level(T: DetTransducer, max_k: int | None = None) -> SyncCertificate:
    """
    Least k such that pi(w, .) is constant for every word w of length k.

    A word of length k separates some pair iff the pair graph has a walk of
    k edges, so the level is one more than the longest walk and a circuit
    certifies that no level exists.
    """
    if max_k is None:
        max_k = len(T.states) ** 2
    if len(T.states) == 1:
        return SyncCertificate(0, T)
    g = pair_graph(T)
    if not nx.is_directed_acyclic_graph(g):
        cycle = nx.find_cycle(g)
        witness = [sorted(edge[0]) for edge in cycle]
        raise NotSynchronizingError(
            "Transducer is not strongly synchronizing",
            {"witness_cycle": witness},
        )
    level = nx.dag_longest_path_length(g) + 1
    logger.debug(f"sync_level: {len(g)} pairs, level {level}")
    if level > max_k:
        raise BoundExceededError(
            "max_k", max_k,
            f"Synchronizing level {level} exceeds max_k={max_k}; result inconclusive",
            {"level": level},
        )
    return SyncCertificate(level, T)


def forced_state(T: DetTransducer, w: Word, level: int | None = None) -> State:
    cert = sync_level(T) if level is None else SyncCertificate(level, T)
    return cert.forced(w)


def sink_component(T: DetTransducer) -> DetTransducer:
    """
    Restrict to the terminal strongly connected component.

    For a strongly synchronizing machine this is exactly the set of forced
    states, reachable from everywhere.
    """
    g = T.graph()
    condensed = nx.condensation(g)
    sinks = [c for c in condensed.nodes if condensed.out_degree(c) == 0]
    if len(sinks) != 1:
        raise NotSynchronizingError(
            f"Expected one terminal component, found {len(sinks)}",
            {"components": [sorted(condensed.nodes[c]["members"]) for c in sinks]},
        )
    return T.restrict(condensed.nodes[sinks[0]]["members"])


def core(T: DetTransducer, max_k: int | None = None) -> DetTransducer:
    sync_level(T, max_k)
    return sink_component(T)


def is_core(T: DetTransducer) -> bool:
    return nx.is_strongly_connected(T.graph())


def check_product_level(T: DetTransducer, U: DetTransducer) -> LevelCheck:
    """
    Measure the level of T*U against the sum of the factor levels.

    The bound is only guaranteed when T writes one letter per step; for
    other inputs the measurement is returned with a warning if it exceeds
    the sum.
    """
    j = sync_level(T).level
    k = sync_level(U).level
    measured = sync_level(product(T, U)).level
    check = LevelCheck(measured, j + k, T.is_synchronous)
    if not check.holds:
        if check.guaranteed:
            raise DomainError(
                f"Product level {measured} exceeds {j} + {k}",
                {"measured": measured, "bound": j + k},
            )
        logger.warning(f"Product level {measured} exceeds {j} + {k} for non-synchronous input")
    return check


def is_bisynchronizing(T: DetTransducer) -> tuple[int, int]:
    """Levels of T and of its inverse."""
    from .images import invert

    inverse = invert(T)
    return sync_level(T).level, sync_level(inverse).level


def _letter_automaton(N: NondetTransducer):
    """
    Split word-input edges into chains of single-letter steps.

    Returns (node count, letter adjacency matrices, empty-input closure).
    """
    index = {q: i for i, q in enumerate(N.states)}
    steps: list[tuple[int, int, int]] = []
    silent: list[tuple[int, int]] = []
    size = len(index)
    for e in N.edges:
        if not e.input:
            silent.append((index[e.source], index[e.target]))
            continue
        current = index[e.source]
        for pos, x in enumerate(e.input):
            if pos == len(e.input) - 1:
                nxt = index[e.target]
            else:
                nxt = size
                size += 1
            steps.append((x, current, nxt))
            current = nxt
    letters = [zeros(size, size) for _ in range(N.n)]
    for x, a, b in steps:
        letters[x][a, b] += 1
    closure_step = zeros(size, size)
    for a, b in silent:
        closure_step[a, b] += 1
    closure = (eye(size) - closure_step).inv()
    return size, letters, closure


def nondet_sync_check(N: NondetTransducer, bound: int | None = None) -> int:
    """
    Check that each prime word labels exactly one circuit, up to length `bound`.

    Returns the length the check was carried out to.
    """
    if bound is None:
        bound = 2 * len(N.edges)
    _, letters, closure = _letter_automaton(N)
    stepped = [a * closure for a in letters]
    for length in range(1, bound + 1):
        for u in enumerate_prime_classes(N.n, length):
            walk = stepped[u[0]]
            for x in u[1:]:
                walk = walk * stepped[x]
            count = walk.trace()
            if count != 1:
                raise NotSynchronizingError(
                    f"Prime word {format_word(u)} labels {count} circuits",
                    {"word": format_word(u), "circuits": int(count), "verified_up_to": length - 1},
                )
    logger.debug(f"nondet_sync_check: verified up to length {bound}")
    return bound
