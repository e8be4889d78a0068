"""Greatest common prefixes, incomplete-response removal, merging and minimization."""

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

from errors import BoundExceededError, DegenerateError, DomainError
from utils.logger import get_logger
from words import EMPTY, Word, canonical_rotation, format_word, prime_root

from .base import DetTransducer, InitialDetTransducer, State, ZxTransducer, product
from .synchronization import core, sink_component

logger = get_logger()

Annotation = Mapping[State, int]


@dataclass(frozen=True)
class InfiniteResponse:
    """Every output from the state is prefix followed by period forever."""
    prefix: Word
    period: Word

    @property
    def x(self) -> Word:
        return canonical_rotation(prime_root(self.period))


Response = Word | InfiniteResponse


def default_depth_bound(T: DetTransducer) -> int:
    return max(2 * len(T.states) * (1 + T.max_output_length), 8)


def expand_configuration(successors: Callable[[Hashable], Iterable[tuple[Hashable, Word]]],
                         pending: Iterable[tuple[Hashable, Word]]) -> frozenset:
    """Replace (node, empty) pairs by the outgoing edges of node until every pair owes output."""
    result = set()
    stack = list(pending)
    seen = set()
    while stack:
        node, owed = stack.pop()
        if owed:
            result.add((node, owed))
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.extend(successors(node))
    return frozenset(result)


def empty_response(T: DetTransducer, q: State, depth_bound: int | None = None) -> Response:
    """
    Greatest common prefix of all infinite outputs from q.

    Tracks the set of (state, owed output) pairs; a repeated set after
    stripping a shared letter means the output is forced forever.
    """
    if depth_bound is None:
        depth_bound = default_depth_bound(T)
    config = expand_configuration(T.successors, [(q, EMPTY)])
    prefix: list[int] = []
    seen: dict[frozenset, int] = {config: 0}
    while True:
        firsts = {word[0] for _, word in config}
        if len(firsts) > 1:
            return tuple(prefix)
        letter = firsts.pop()
        prefix.append(letter)
        config = expand_configuration(T.successors, [(p, word[1:]) for p, word in config])
        if config in seen:
            start = seen[config]
            return InfiniteResponse(tuple(prefix[:start]), tuple(prefix[start:]))
        seen[config] = len(prefix)
        if len(prefix) > depth_bound:
            raise BoundExceededError(
                "depth", depth_bound,
                f"Common prefix at state {q} did not stabilize within {depth_bound} letters",
                {"state": q},
            )


def responses(T: DetTransducer, depth_bound: int | None = None) -> dict[State, Response]:
    return {q: empty_response(T, q, depth_bound) for q in T.states}


def lambda_gcp(T: DetTransducer, q: State, w: Word, depth_bound: int | None = None) -> Response:
    """Lambda(w, q) = lambda(w, q) . Lambda(empty, pi(w, q))."""
    target, out = T.run(q, w)
    tail = empty_response(T, target, depth_bound)
    if isinstance(tail, InfiniteResponse):
        return InfiniteResponse(out + tail.prefix, tail.period)
    return out + tail


def _finite_responses(T: DetTransducer, depth_bound: int | None = None) -> dict[State, Word]:
    found = responses(T, depth_bound)
    for q, value in found.items():
        if isinstance(value, InfiniteResponse):
            raise DegenerateError(
                f"degenerate: Z_x case at state {q}",
                {"state": q, "x": format_word(value.x)},
            )
    return found


def strip_responses(T: DetTransducer, found: Mapping[State, Word]) -> DetTransducer:
    """lambda'(x, q) = Lambda(q)^-1 lambda(x, q) Lambda(pi(x, q))."""
    output = {}
    for (x, q), word in T.output.items():
        full = word + found[T.pi(x, q)]
        head = found[q]
        if full[:len(head)] != head:
            raise DomainError(f"Response of {q} is not a prefix of its outputs", {"state": q})
        output[(x, q)] = full[len(head):]
    return DetTransducer(T.n, T.states, dict(T.transition), output)


def initial_state_name(T: DetTransducer) -> State:
    name = "q_-1"
    while name in T.states:
        name += "'"
    return name


def remove_incomplete_response(
    T: InitialDetTransducer, depth_bound: int | None = None
) -> InitialDetTransducer:
    """
    Rebuild T so that no state has incomplete response.

    A fresh initial state writes Lambda(x, q0) on its first letter and the
    remaining states shed their forced prefixes.
    """
    machine = T.base
    found = _finite_responses(machine, depth_bound)
    if not any(found.values()):
        return T
    stripped = strip_responses(machine, found)
    start = initial_state_name(machine)
    transition = dict(stripped.transition)
    output = dict(stripped.output)
    for x in machine.letters:
        transition[(x, start)] = machine.pi(x, T.initial)
        output[(x, start)] = machine.lam(x, T.initial) + found[machine.pi(x, T.initial)]
    rebuilt = DetTransducer(machine.n, (start,) + machine.states, transition, output)
    return InitialDetTransducer(rebuilt, start).trim()


def omega_partition(T: DetTransducer) -> dict[State, State]:
    """
    Coarsest partition compatible with single-letter outputs and transitions.

    Maps each state to the first member of its block.
    """
    block = {q: tuple(T.lam(x, q) for x in T.letters) for q in T.states}
    count = len(set(block.values()))
    while True:
        refined = {
            q: (block[q], tuple(block[T.pi(x, q)] for x in T.letters)) for q in T.states
        }
        new_count = len(set(refined.values()))
        block = refined
        if new_count == count:
            break
        count = new_count
    leader: dict = {}
    for q in T.states:
        leader.setdefault(block[q], q)
    return {q: leader[block[q]] for q in T.states}


def merge_omega_equivalent(T: DetTransducer) -> DetTransducer:
    rep = omega_partition(T)
    states = tuple(q for q in T.states if rep[q] == q)
    return DetTransducer(
        T.n,
        states,
        {(x, q): rep[T.pi(x, q)] for q in states for x in T.letters},
        {(x, q): T.lam(x, q) for q in states for x in T.letters},
    )


def reduce_core(T: DetTransducer, depth_bound: int | None = None) -> DetTransducer | ZxTransducer:
    """Minimize a machine already known to be a synchronizing core."""
    found = responses(T, depth_bound)
    for value in found.values():
        if isinstance(value, InfiniteResponse):
            return ZxTransducer(T.n, value.x)
    stripped = strip_responses(T, found)
    result = merge_omega_equivalent(stripped)
    logger.debug(f"minimize: {len(T.states)} -> {len(result.states)} states")
    return result


def minimize(T: DetTransducer, depth_bound: int | None = None) -> DetTransducer | ZxTransducer:
    """Core, then the Z_x test, then incomplete-response removal and merging."""
    return reduce_core(core(T), depth_bound)


def minimize_initial(
    T: InitialDetTransducer, depth_bound: int | None = None
) -> InitialDetTransducer:
    trimmed = remove_incomplete_response(T.trim(), depth_bound)
    rep = omega_partition(trimmed.base)
    merged = merge_omega_equivalent(trimmed.base)
    return InitialDetTransducer(merged, rep[trimmed.initial]).trim()


def reduce_pair(
    T: DetTransducer, alpha: Annotation, depth_bound: int | None = None
) -> tuple[DetTransducer, dict[State, int]]:
    """Minimize a synchronizing core together with its annotation."""
    found = _finite_responses(T, depth_bound)
    shifted = {q: alpha[q] + len(found[q]) for q in T.states}
    stripped = strip_responses(T, found)
    rep = omega_partition(stripped)
    merged = merge_omega_equivalent(stripped)
    return merged, {q: shifted[q] for q in merged.states if rep[q] == q}


def compose(T: DetTransducer, U: DetTransducer) -> DetTransducer | ZxTransducer:
    """Minimal form of T followed by U, for strongly synchronizing factors."""
    return reduce_core(sink_component(product(T, U)))


def is_isomorphic(T, U) -> bool:
    """True iff a state bijection commutes with transitions and outputs."""
    if isinstance(T, ZxTransducer) or isinstance(U, ZxTransducer):
        return T == U
    if T.n != U.n or len(T.states) != len(U.states):
        return False
    # 0^k forces corresponding states once k passes both levels.
    reset = (0,) * (len(T.states) ** 2)
    anchor = T.run(T.states[0], reset)[0]
    preferred = U.run(U.states[0], reset)[0]
    candidates = [preferred] + [q for q in U.states if q != preferred]
    for start in candidates:
        if _extend_bijection(T, U, anchor, start):
            return True
    return False


def _extend_bijection(T: DetTransducer, U: DetTransducer, a: State, b: State) -> bool:
    mapping = {a: b}
    used = {b}
    queue = [a]
    while queue:
        p = queue.pop()
        q = mapping[p]
        for x in T.letters:
            if T.lam(x, p) != U.lam(x, q):
                return False
            tp, tq = T.pi(x, p), U.pi(x, q)
            if tp in mapping:
                if mapping[tp] != tq:
                    return False
            else:
                if tq in used:
                    return False
                mapping[tp] = tq
                used.add(tq)
                queue.append(tp)
    return len(mapping) == len(T.states)
