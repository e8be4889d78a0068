"""Sliding block codes and their transducers."""

from collections.abc import Callable
from dataclasses import dataclass

from errors import DegenerateError, DomainError
from machines.base import DetTransducer, State
from machines.core import reduce_pair
from utils.logger import get_logger
from words import Word, common_prefix, words_of_length

from .annotations import AnnotatedTransducer
from .sequences import BiInfiniteSeq, apply, apply_block_map

logger = get_logger()


@dataclass(frozen=True)
class LocalRule:
    """
    Block map f: X_n^m -> X_n with y_i = f(x_(i-m+1+a) ... x_(i+a)).

    `table` is indexed by the window read as a base-n number, most
    significant letter first; `anticipation` is how far the window reaches
    past i.
    """
    n: int
    m: int
    table: tuple[int, ...]
    anticipation: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"Window length must be positive, got {self.m}")
        if len(self.table) != self.n ** self.m:
            raise DomainError(
                f"Rule table has {len(self.table)} entries, expected {self.n ** self.m}"
            )
        if any(not 0 <= y < self.n for y in self.table):
            raise DomainError("Rule table writes a letter outside the alphabet")
        if not 0 <= self.anticipation < self.m:
            raise DomainError(f"Anticipation {self.anticipation} outside [0, {self.m})")

    @property
    def memory(self) -> int:
        return self.m - 1 - self.anticipation

    def index(self, block: Word) -> int:
        value = 0
        for x in block:
            value = value * self.n + x
        return value

    def __call__(self, block: Word) -> int:
        return self.table[self.index(block)]

    def on_sequence(self, x: BiInfiniteSeq) -> BiInfiniteSeq:
        return apply_block_map(self, self.memory, self.anticipation, x)


def rule_from_function(n: int, m: int, f: Callable[[Word], int],
                       anticipation: int = 0) -> LocalRule:
    return LocalRule(n, m, tuple(f(block) for block in words_of_length(n, m)), anticipation)


def is_right_permutive(f: LocalRule) -> bool:
    """For every block a of length m-1, x -> f(ax) is a bijection."""
    size = f.n ** (f.m - 1)
    return all(
        len({f.table[a * f.n + x] for x in range(f.n)}) == f.n for a in range(size)
    )


def is_left_permutive(f: LocalRule) -> bool:
    """For every block a of length m-1, x -> f(xa) is a bijection."""
    size = f.n ** (f.m - 1)
    return all(
        len({f.table[x * size + a] for x in range(f.n)}) == f.n for a in range(size)
    )


def _block_name(value: int, n: int, length: int) -> State:
    digits = []
    for _ in range(length):
        value, d = divmod(value, n)
        digits.append(d)
    return "b" + ".".join(str(d) for d in reversed(digits))


def _block_responses(nxt: list[list[int]], out: list[list[Word]], limit: int) -> list[Word]:
    """
    Greatest common prefix of all outputs from each block state.

    The common prefix of outputs of length-k inputs grows with k; a round
    that changes nothing is the fixed point.
    """
    size = len(nxt)
    found: list[Word] = [()] * size
    for _ in range(limit):
        grown = [
            common_prefix(o + found[t] for o, t in zip(out[s], nxt[s])) for s in range(size)
        ]
        if grown == found:
            return found
        found = grown
    raise DegenerateError(
        f"degenerate: output forced beyond {limit} letters", {"limit": limit}
    )


def _refine(nxt: list[list[int]], out: list[list[Word]]) -> list[int]:
    """Class id per state under output-and-successor refinement."""
    ids: dict = {}
    cls = [ids.setdefault(tuple(row), len(ids)) for row in out]
    while True:
        ids = {}
        refined = [
            ids.setdefault((cls[s], tuple(cls[t] for t in nxt[s])), len(ids))
            for s in range(len(nxt))
        ]
        if len(ids) == len(set(cls)):
            return refined
        cls = refined


def local_rule_to_transducer(f: LocalRule) -> AnnotatedTransducer:
    """
    Pair (T, alpha) acting on sequences as the block map f.

    States of the de Bruijn machine are the last m-1 letters read; reading x
    at v writes f(vx), the letter for index i - anticipation, so every state
    starts at annotation -anticipation. Responses are stripped and states
    merged on the integer encoding before the machine is built.
    """
    n, size = f.n, f.n ** (f.m - 1)
    nxt = [[(s * n + x) % size for x in range(n)] for s in range(size)]
    raw = [[(f.table[s * n + x],) for x in range(n)] for s in range(size)]
    responses = _block_responses(nxt, raw, 4 * f.m + 8)
    out = []
    for s in range(size):
        head = len(responses[s])
        out.append([(raw[s][x] + responses[nxt[s][x]])[head:] for x in range(n)])
    cls = _refine(nxt, out)
    leader: dict[int, int] = {}
    for s in range(size):
        leader.setdefault(cls[s], s)
    names = {c: _block_name(s, n, f.m - 1) for c, s in leader.items()}
    transition = {}
    output = {}
    annotation = {}
    for c, s in leader.items():
        annotation[names[c]] = len(responses[s]) - f.anticipation
        for x in range(n):
            transition[(x, names[c])] = names[cls[nxt[s][x]]]
            output[(x, names[c])] = out[s][x]
    machine = DetTransducer(n, tuple(names.values()), transition, output)
    logger.debug(f"local_rule_to_transducer: {size} blocks -> {len(machine.states)} states")
    reduced, reduced_annotation = reduce_pair(machine, annotation)
    return AnnotatedTransducer(reduced, reduced_annotation)


def calibrate(pair: AnnotatedTransducer, direct: Callable[[BiInfiniteSeq], BiInfiniteSeq],
              sample: BiInfiniteSeq, reach: int) -> AnnotatedTransducer:
    """
    Shift the annotation so that apply agrees with `direct` on `sample`.

    Offsets are tried in order 0, 1, -1, 2, -2, ... up to `reach`.
    """
    target = direct(sample)
    for step in range(2 * reach + 1):
        d = (step + 1) // 2 * (1 if step % 2 else -1)
        candidate = pair.shifted(d) if d else pair
        if apply(candidate, sample) == target:
            if d:
                logger.warning(f"calibrate: annotation moved by {d}")
            return candidate
    raise DomainError(
        "No annotation shift matches the direct evaluation",
        {"sample": str(sample), "reach": reach},
    )
