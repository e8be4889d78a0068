"""Reversed transducers, path remainders, recovery of a deterministic machine and rev-sig."""

from collections import deque
from dataclasses import dataclass

from errors import BoundExceededError, DomainError, FormatError, SignatureMismatchError
from utils.logger import get_logger
from words import EMPTY, Word, format_word, is_prefix, reverse

from .base import DetTransducer, NondetEdge, NondetTransducer, State, ZxTransducer
from .core import minimize
from .images import (
    Antichain,
    cone_cover,
    default_remainder_bound,
    expand_configuration,
    invert,
    reduce_antichain,
    step_configuration,
)
from .signatures import SigValue, sig
from .synchronization import sink_component

logger = get_logger()


def rev(T: DetTransducer) -> NondetTransducer:
    """Edge (x, pi(x, p), p) for every edge of T, with the output reversed."""
    return NondetTransducer(
        T.n,
        T.states,
        tuple(
            NondetEdge((x,), T.pi(x, p), p, reverse(T.lam(x, p)))
            for p in T.states for x in T.letters
        ),
    )


def nd_inverse_view(T: DetTransducer) -> NondetTransducer:
    """Read what T writes and write what T reads."""
    return NondetTransducer(
        T.n,
        T.states,
        tuple(
            NondetEdge(T.lam(x, q), q, T.pi(x, q), (x,))
            for q in T.states for x in T.letters
        ),
    )


def _inputs(N: NondetTransducer):
    return lambda q: [(e.target, e.input) for e in N.out_edges(q)]


def _outputs(N: NondetTransducer):
    return lambda q: [(e.target, e.output) for e in N.out_edges(q)]


def default_path_bound(N: NondetTransducer) -> int:
    return default_remainder_bound(N.n, len(N.states), max(N.max_input_length, 1))


def domain_antichain(N: NondetTransducer, q: State, bound: int | None = None) -> Antichain:
    if bound is None:
        bound = default_path_bound(N)
    return cone_cover(_inputs(N), q, N.n, bound)


def image_antichain_nd(N: NondetTransducer, q: State, bound: int | None = None) -> Antichain:
    if bound is None:
        bound = default_path_bound(N)
    return cone_cover(_outputs(N), q, N.n, bound)


def rev_domain(N: NondetTransducer, q: State, k: int) -> Antichain:
    """Depth-k words readable from q, reduced to a minimal cone cover."""
    succ = _inputs(N)
    found: list[Word] = []
    stack = [(expand_configuration(succ, [(q, EMPTY)]), EMPTY)]
    while stack:
        config, prefix = stack.pop()
        if not config:
            continue
        if len(prefix) == k:
            found.append(prefix)
            continue
        for a in range(N.n):
            stack.append((step_configuration(succ, config, a), prefix + (a,)))
    return reduce_antichain(found, N.n)


def _can_read(N: NondetTransducer, q: State, owed: Word, memo: dict) -> bool:
    key = (q, owed)
    if key not in memo:
        memo[key] = False
        result = False
        for e in N.out_edges(q):
            if len(e.input) >= len(owed):
                result = e.input[:len(owed)] == owed
            elif owed[:len(e.input)] == e.input:
                result = _can_read(N, e.target, owed[len(e.input):], memo)
            if result:
                break
        memo[key] = result
    return memo[key]


def nd_path_gcp(N: NondetTransducer, q: State, w: Word,
                bound: int | None = None) -> list[NondetEdge]:
    """
    Longest edge path shared by every infinite path from q whose input starts with w.

    Once w is read the path still extends through states with a single
    outgoing edge.
    """
    if bound is None:
        bound = default_path_bound(N)
    memo: dict = {}
    path: list[NondetEdge] = []
    read: Word = EMPTY
    state = q
    while True:
        edges = N.out_edges(state)
        if len(read) >= len(w):
            if len(edges) != 1:
                break
            edge = edges[0]
        else:
            owed = w[len(read):]
            viable = []
            for e in edges:
                if len(e.input) >= len(owed):
                    ok = e.input[:len(owed)] == owed
                else:
                    ok = owed[:len(e.input)] == e.input and _can_read(
                        N, e.target, owed[len(e.input):], memo
                    )
                if ok:
                    viable.append(e)
            if not viable:
                raise DomainError(
                    f"Cone {format_word(w)} is not in the domain of {q}",
                    {"state": q, "word": format_word(w)},
                )
            if len(viable) > 1:
                break
            edge = viable[0]
        path.append(edge)
        read += edge.input
        state = edge.target
        if len(path) > bound:
            raise BoundExceededError(
                "path", bound,
                f"Common path from {q} on {format_word(w)} exceeded {bound} edges",
                {"state": q},
            )
    return path


@dataclass(frozen=True)
class Settled:
    remainder: Word
    state: State
    written: Word


def _settle(N: NondetTransducer, w: Word, q: State, bound: int) -> Settled:
    path = nd_path_gcp(N, q, w, bound)
    read = tuple(x for e in path for x in e.input)
    if not is_prefix(read, w):
        raise DomainError(
            f"Forced path from {q} reads past {format_word(w)}",
            {"state": q, "read": format_word(read)},
        )
    end = path[-1].target if path else q
    written = tuple(x for e in path for x in e.output)
    return Settled(w[len(read):], end, written)


def rec_state_name(w: Word, q: State) -> State:
    return f"({format_word(w)}|{q})"


def rec(N: NondetTransducer, bound: int | None = None,
        max_states: int = 20_000) -> DetTransducer:
    """
    Deterministic machine on pairs (w|q) that tracks N's unique infinite path.

    Returns the terminal component of the explored machine.
    """
    if bound is None:
        bound = default_path_bound(N)
    start = N.states[0]
    seed = domain_antichain(N, start, bound).words[0]
    first = _settle(N, seed, start, bound)
    key0 = (first.remainder, first.state)
    index = {key0: rec_state_name(*key0)}
    queue = deque([key0])
    transition = {}
    output = {}
    while queue:
        w, q = queue.popleft()
        name = index[(w, q)]
        for a in range(N.n):
            step = _settle(N, w + (a,), q, bound)
            if len(step.remainder) > bound:
                raise BoundExceededError("remainder", bound, details={"state": name})
            key = (step.remainder, step.state)
            if key not in index:
                index[key] = rec_state_name(*key)
                queue.append(key)
                if len(index) > max_states:
                    raise BoundExceededError("recovered states", max_states)
            transition[(a, name)] = index[key]
            output[(a, name)] = step.written
    try:
        raw = DetTransducer(N.n, tuple(index.values()), transition, output)
    except FormatError as e:
        raise DomainError(f"Recovered machine is degenerate: {e.message}", e.details) from e
    logger.debug(f"rec: {len(raw.states)} states explored")
    return sink_component(raw)


def rev_automorphism(T: DetTransducer) -> DetTransducer:
    """minimize(rec(rev(T))) on the minimal form of T."""
    M = minimize(T)
    if isinstance(M, ZxTransducer):
        raise DomainError("The reverse automorphism is defined on group elements only")
    result = minimize(rec(rev(M)))
    if isinstance(result, ZxTransducer):
        raise DomainError("Reverse automorphism degenerated to a Z_x machine")
    return result


def reverse_cone_sum(T: DetTransducer, bound: int | None = None) -> int:
    """Sum over states of the cone count of each reversed state's image."""
    M = minimize(T)
    N = rev(M)
    return sum(len(image_antichain_nd(N, q, bound)) for q in N.states)


def rev_sig(T: DetTransducer, bound: int | None = None) -> SigValue:
    """sig of the reverse automorphism, cross-checked against the reversed cone sum."""
    modulus = T.n - 1
    direct = sig(rev_automorphism(T), bound)
    counted = reverse_cone_sum(T, bound) % modulus
    if direct.residue != counted:
        raise SignatureMismatchError(
            "rev-sig routes disagree",
            {"reverse_automorphism": direct.residue, "cone_sum": counted},
        )
    return direct


@dataclass(frozen=True)
class ProbeResult:
    rev_sig: SigValue
    inverse_sig: SigValue

    @property
    def agree(self) -> bool:
        return self.rev_sig == self.inverse_sig


def probe_q1(T: DetTransducer) -> ProbeResult:
    """Compare rev-sig(T) with sig(T^-1)."""
    return ProbeResult(rev_sig(T), sig(invert(T)))
