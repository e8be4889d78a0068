"""Eventually periodic bi-infinite sequences and the maps acting on them."""

import re
from collections.abc import Callable
from dataclasses import dataclass

from errors import DomainError, FormatError, WordError
from words import Word, canonical_rotation, format_word, parse_word, prime_root

from .annotations import AnnotatedTransducer

_LITERAL = re.compile(
    r"^\s*\((?P<left>[^()]*)\)\^-inf\s*\.\s*(?P<center>[^.@]*?)\s*\.\s*"
    r"\((?P<right>[^()]*)\)\^inf\s*@\s*(?P<offset>-?\d+)\s*$"
)


def _rotate(w: Word, k: int) -> Word:
    k %= len(w)
    return w[k:] + w[:k]


@dataclass(frozen=True)
class BiInfiniteSeq:
    """
    ...uuu v www... with the first letter of v at index `offset`.

    When v is empty, index `offset` holds the first letter of w.
    """
    left: Word
    center: Word
    right: Word
    offset: int

    def __post_init__(self):
        if not self.left or not self.right:
            raise WordError("Periodic tails must be non-empty")

    def letter(self, i: int) -> int:
        t = self.offset
        if i < t:
            return self.left[(i - t) % len(self.left)]
        if i < t + len(self.center):
            return self.center[i - t]
        return self.right[(i - t - len(self.center)) % len(self.right)]

    def window(self, start: int, length: int) -> Word:
        return tuple(self.letter(i) for i in range(start, start + length))

    @property
    def is_periodic(self) -> bool:
        return not self.center and self.left == self.right

    def normalize(self) -> "BiInfiniteSeq":
        """
        Primitive tails, the center pushed into the tails as far as it goes.

        A letter joins the right tail first; once the center is empty the
        boundary moves right while the left tail continues. Fully periodic
        sequences use the least rotation and an offset in [0, period).
        """
        u, v, w, t = prime_root(self.left), self.center, prime_root(self.right), self.offset
        while v and v[-1] == w[-1]:
            v = v[:-1]
            w = _rotate(w, -1)
        while v and v[0] == u[0]:
            v = v[1:]
            u = _rotate(u, 1)
            t += 1
        if not v:
            for _ in range(len(u) + len(w) + 1):
                if u == w or w[0] != u[0]:
                    break
                u = _rotate(u, 1)
                w = _rotate(w, 1)
                t += 1
        if not v and u == w:
            least = canonical_rotation(w)
            k = next(i for i in range(len(w)) if _rotate(w, i) == least)
            return BiInfiniteSeq(least, v, least, (t + k) % len(w))
        return BiInfiniteSeq(u, v, w, t)

    def shifted(self, k: int = 1) -> "BiInfiniteSeq":
        """The sequence y with y_(i+k) = x_i."""
        return BiInfiniteSeq(self.left, self.center, self.right, self.offset + k).normalize()

    def __str__(self) -> str:
        return (
            f"({format_word(self.left)})^-inf . {format_word(self.center)} . "
            f"({format_word(self.right)})^inf @ {self.offset}"
        )


def periodic(word: Word, offset: int = 0) -> BiInfiniteSeq:
    return BiInfiniteSeq(word, (), word, offset).normalize()


def parse_sequence(text: str, n: int | None = None) -> BiInfiniteSeq:
    """Parse "(u)^-inf . v . (w)^inf @ t"; v may be "-" for the empty word."""
    match = _LITERAL.match(text)
    if not match:
        raise FormatError(f"Bad sequence literal: {text!r}", {"literal": text})
    left = parse_word(match["left"], n)
    right = parse_word(match["right"], n)
    if not left or not right:
        raise FormatError("Sequence tails must be non-empty", {"literal": text})
    return BiInfiniteSeq(
        left, parse_word(match["center"], n), right, int(match["offset"])
    ).normalize()


def apply_block_map(rule: Callable[[Word], int], memory: int, anticipation: int,
                    x: BiInfiniteSeq) -> BiInfiniteSeq:
    """y_i = rule(x_(i-memory) ... x_(i+anticipation)) evaluated directly."""
    width = memory + anticipation + 1
    p, r = len(x.left), len(x.right)
    t = x.offset

    def at(i: int) -> int:
        return rule(x.window(i - memory, width))

    start = t - anticipation
    stop = t + len(x.center) + memory
    left = tuple(at(i) for i in range(start - p, start))
    center = tuple(at(i) for i in range(start, stop))
    right = tuple(at(i) for i in range(stop, stop + r))
    return BiInfiniteSeq(left, center, right, start).normalize()


def apply(pair: AnnotatedTransducer, x: BiInfiniteSeq) -> BiInfiniteSeq:
    """
    Image of x under (T, alpha).

    The letter x_i is read in the state forced by the letters before it and
    its output is written from index i + alpha(state) on.
    """
    T, alpha = pair.machine, pair.annotation
    validate_letters(x, T.n)
    level = pair.level
    u, v, w = x.left, x.center, x.right
    p, r = len(u), len(w)
    reps = -(-level // p) if level else 0
    # The state at the first center index recurs every p steps along the left tail.
    q_t = T.run(T.states[0], u * reps)[0]
    q_check, left_out = T.run(q_t, u)
    if q_check != q_t or len(left_out) != p:
        raise DomainError("Left tail does not close up", {"level": level})
    m = -(-level // r) if level else 0
    q_right, center_out = T.run(q_t, v + w * m)
    q_loop, right_out = T.run(q_right, w)
    if q_loop != q_right or len(right_out) != r:
        raise DomainError("Right tail does not close up", {"level": level})
    return BiInfiniteSeq(left_out, center_out, right_out, x.offset + alpha[q_t]).normalize()


def validate_letters(x: BiInfiniteSeq, n: int) -> None:
    for a in x.left + x.center + x.right:
        if not 0 <= a < n:
            raise FormatError(f"Letter {a} outside alphabet of size {n}")
