"""Transducer types and the basic operations on them."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import networkx as nx

from errors import DegenerateError, FormatError, WordError
from words import Word, canonical_rotation, check_letters, is_prime

State = str


@dataclass(frozen=True)
class DetTransducer:
    """
    Deterministic transducer reading one letter and writing a word per step.

    transition maps (letter, state) to the next state and output maps
    (letter, state) to the emitted word. Both must be total.
    """
    n: int
    states: tuple[State, ...]
    transition: Mapping[tuple[int, State], State]
    output: Mapping[tuple[int, State], Word]

    def __post_init__(self):
        if self.n < 2:
            raise FormatError(f"Alphabet size must be at least 2, got {self.n}")
        if not self.states:
            raise FormatError("Transducer has no states")
        if len(set(self.states)) != len(self.states):
            raise FormatError("Duplicate state names", {"states": list(self.states)})
        known = set(self.states)
        for q in self.states:
            for x in range(self.n):
                if (x, q) not in self.transition or (x, q) not in self.output:
                    raise FormatError(
                        f"Missing edge for letter {x} at state {q}",
                        {"state": q, "letter": x},
                    )
                if self.transition[(x, q)] not in known:
                    raise FormatError(
                        f"Edge from {q} on {x} targets unknown state "
                        f"{self.transition[(x, q)]}",
                        {"state": q, "letter": x},
                    )
                check_letters(self.output[(x, q)], self.n)
        # Every circuit must write something.
        silent = nx.DiGraph()
        silent.add_nodes_from(self.states)
        for (x, q), word in self.output.items():
            if not word:
                silent.add_edge(q, self.transition[(x, q)])
        if not nx.is_directed_acyclic_graph(silent):
            cycle = nx.find_cycle(silent)
            raise FormatError(
                "Degenerate transducer: circuit with empty output",
                {"cycle": [list(edge) for edge in cycle]},
            )

    @property
    def letters(self) -> range:
        return range(self.n)

    def pi(self, x: int, q: State) -> State:
        return self.transition[(x, q)]

    def lam(self, x: int, q: State) -> Word:
        return self.output[(x, q)]

    def run(self, q: State, w: Iterable[int]) -> tuple[State, Word]:
        """Return (pi(w, q), lambda(w, q))."""
        out: list[int] = []
        for x in w:
            if not 0 <= x < self.n:
                raise FormatError(f"Letter {x} outside alphabet of size {self.n}")
            out.extend(self.output[(x, q)])
            q = self.transition[(x, q)]
        return q, tuple(out)

    @property
    def max_output_length(self) -> int:
        return max(len(word) for word in self.output.values())

    @property
    def is_synchronous(self) -> bool:
        return all(len(word) == 1 for word in self.output.values())

    def successors(self, q: State) -> list[tuple[State, Word]]:
        """(next state, output) for each letter in order."""
        return [(self.transition[(x, q)], self.output[(x, q)]) for x in self.letters]

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        for (x, q), target in self.transition.items():
            g.add_edge(q, target)
        return g

    def restrict(self, keep: Iterable[State]) -> "DetTransducer":
        """Sub-transducer on a transition-closed set of states, in original order."""
        keep = set(keep)
        states = tuple(q for q in self.states if q in keep)
        return DetTransducer(
            self.n,
            states,
            {(x, q): self.transition[(x, q)] for q in states for x in self.letters},
            {(x, q): self.output[(x, q)] for q in states for x in self.letters},
        )

    def rename(self, names: Mapping[State, State]) -> "DetTransducer":
        return DetTransducer(
            self.n,
            tuple(names[q] for q in self.states),
            {(x, names[q]): names[t] for (x, q), t in self.transition.items()},
            {(x, names[q]): w for (x, q), w in self.output.items()},
        )

    def reachable(self, start: State) -> set[State]:
        return {start} | nx.descendants(self.graph(), start)


@dataclass(frozen=True)
class InitialDetTransducer:
    """A deterministic transducer started at a chosen state."""
    base: DetTransducer
    initial: State

    def __post_init__(self):
        if self.initial not in self.base.states:
            raise FormatError(f"Initial state {self.initial} is not a state")

    @property
    def n(self) -> int:
        return self.base.n

    def run(self, w: Iterable[int]) -> tuple[State, Word]:
        return self.base.run(self.initial, w)

    def trim(self) -> "InitialDetTransducer":
        return InitialDetTransducer(
            self.base.restrict(self.base.reachable(self.initial)), self.initial
        )


@dataclass(frozen=True)
class ZxTransducer:
    """Single-state machine writing the prime word x on every letter."""
    n: int
    x: Word

    def __post_init__(self):
        check_letters(self.x, self.n)
        if not self.x or not is_prime(self.x) or canonical_rotation(self.x) != self.x:
            raise DegenerateError(
                f"Z_x label must be a prime minimal rotation, got {self.x}"
            )

    def as_det(self, name: State = "z") -> DetTransducer:
        return DetTransducer(
            self.n,
            (name,),
            {(x, name): name for x in range(self.n)},
            {(x, name): self.x for x in range(self.n)},
        )


@dataclass(frozen=True)
class NondetEdge:
    input: Word
    source: State
    target: State
    output: Word


@dataclass(frozen=True)
class NondetTransducer:
    """Finite edge-set transducer whose edges may read whole words."""
    n: int
    states: tuple[State, ...]
    edges: tuple[NondetEdge, ...]
    _out: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise FormatError(f"Alphabet size must be at least 2, got {self.n}")
        known = set(self.states)
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise FormatError(f"Edge {e} uses an unknown state")
            check_letters(e.input, self.n)
            check_letters(e.output, self.n)
            self._out.setdefault(e.source, []).append(e)
        for label, attr in (("input", "input"), ("output", "output")):
            silent = nx.DiGraph()
            silent.add_edges_from(
                (e.source, e.target) for e in self.edges if not getattr(e, attr)
            )
            if not nx.is_directed_acyclic_graph(silent):
                raise FormatError(
                    f"Degenerate transducer: circuit with empty {label}",
                    {"cycle": [list(edge) for edge in nx.find_cycle(silent)]},
                )

    def out_edges(self, q: State) -> list[NondetEdge]:
        return self._out.get(q, [])

    @property
    def max_input_length(self) -> int:
        return max((len(e.input) for e in self.edges), default=0)

    @property
    def max_output_length(self) -> int:
        return max((len(e.output) for e in self.edges), default=0)

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.states)
        for e in self.edges:
            g.add_edge(e.source, e.target, input=e.input, output=e.output)
        return g


def as_nondet(T: DetTransducer) -> NondetTransducer:
    """View a deterministic transducer as an edge set."""
    return NondetTransducer(
        T.n,
        T.states,
        tuple(
            NondetEdge((x,), q, T.pi(x, q), T.lam(x, q))
            for q in T.states for x in T.letters
        ),
    )


_NAME_SPECIALS = ",()\\"


def _name_part(s: State) -> str:
    if not any(c in _NAME_SPECIALS for c in s):
        return s
    escaped = s.replace("\\", "\\\\").replace("(", "\\(").replace(")", "\\)")
    return f"({escaped})"


def product_name(p: State, q: State) -> State:
    """
    "p,q" for plain names.

    A part holding any of `,()\\` is wrapped in parentheses, with its own
    parentheses and backslashes escaped, so distinct pairs never share a name.
    """
    return f"{_name_part(p)},{_name_part(q)}"


def product(T: DetTransducer, U: DetTransducer) -> DetTransducer:
    """The machine that feeds T's output into U."""
    if T.n != U.n:
        raise WordError(f"Alphabet mismatch: {T.n} vs {U.n}")
    names = {(p, q): product_name(p, q) for p in T.states for q in U.states}
    transition = {}
    output = {}
    for (p, q), name in names.items():
        for x in T.letters:
            middle = T.lam(x, p)
            u_state, u_out = U.run(q, middle)
            transition[(x, name)] = names[(T.pi(x, p), u_state)]
            output[(x, name)] = u_out
    return DetTransducer(T.n, tuple(names.values()), transition, output)


def product_initial(T: InitialDetTransducer, U: InitialDetTransducer) -> InitialDetTransducer:
    machine = product(T.base, U.base)
    return InitialDetTransducer(machine, product_name(T.initial, U.initial)).trim()

