"""Marker automorphisms that swap two non-overlapping words wherever they sit in a run."""

from dataclasses import dataclass

from dynamics.annotations import AnnotatedTransducer
from dynamics.local_rules import LocalRule, calibrate, local_rule_to_transducer, rule_from_function
from dynamics.sequences import BiInfiniteSeq, apply_block_map
from errors import InvalidMarkerError, MembershipError
from machines.signatures import in_Dn
from utils.logger import get_logger
from words import Word, format_word, words_of_length

logger = get_logger()

RUN = 5


@dataclass(frozen=True)
class MarkerPair:
    a: Word
    b: Word

    @property
    def length(self) -> int:
        return len(self.a)

    def swap(self, c: Word) -> Word:
        return self.b if c == self.a else self.a

    def __str__(self) -> str:
        return f"({format_word(self.a)} | {format_word(self.b)})"


def _occurrences(word: Word, text: Word) -> list[int]:
    size = len(word)
    return [i for i in range(len(text) - size + 1) if text[i:i + size] == word]


def validate_marker_pair(a: Word, b: Word) -> tuple[bool, str | None]:
    """
    Check the overlap conditions; returns (ok, witness).

    For x, y in {a, b} with x != y, x occurs in xx only at its two ends and y
    does not occur in xx at all.
    """
    if len(a) != len(b) or len(a) < 2:
        raise InvalidMarkerError(
            "Marker words need a common length of at least 2",
            {"a": format_word(a), "b": format_word(b)},
        )
    if a == b:
        return False, "the two words coincide"
    size = len(a)
    for x, y in ((a, b), (b, a)):
        doubled = x + x
        inner = [i for i in _occurrences(x, doubled) if i not in (0, size)]
        if inner:
            return False, f"{format_word(x)} occurs in {format_word(doubled)} at {inner[0]}"
        found = _occurrences(y, doubled)
        if found:
            return False, f"{format_word(y)} occurs in {format_word(doubled)} at {found[0]}"
    return True, None


def enumerate_marker_pairs(n: int, length: int, limit: int | None = None) -> list[MarkerPair]:
    """Valid pairs with a < b in lexicographic order."""
    if n < 2 or length < 2:
        raise InvalidMarkerError(f"Need n >= 2 and l >= 2, got n={n}, l={length}")
    words = list(words_of_length(n, length))
    found = []
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            if validate_marker_pair(a, b)[0]:
                found.append(MarkerPair(a, b))
                if limit is not None and len(found) >= limit:
                    return found
    return found


def search_marker_pair(n: int, length: int) -> MarkerPair | None:
    found = enumerate_marker_pairs(n, length, limit=1)
    return found[0] if found else None


def marker_window(pair: MarkerPair):
    """
    Letter rule on windows of radius 3l - 1 around position j.

    If some run c1..c5 of marker words has c3 covering j, y_j is the
    matching letter of the other word; otherwise y_j = x_j.
    """
    a, b, size = pair.a, pair.b, pair.length
    centre = 3 * size - 1

    def rule(block: Word) -> int:
        for s in range(size):
            start = centre - s - 2 * size
            chunks = [block[start + k * size:start + (k + 1) * size] for k in range(RUN)]
            if all(c == a or c == b for c in chunks):
                return pair.swap(chunks[2])[s]
        return block[centre]

    return rule


def marker_direct(pair: MarkerPair, x: BiInfiniteSeq) -> BiInfiniteSeq:
    radius = 3 * pair.length - 1
    return apply_block_map(marker_window(pair), radius, radius, x)


def marker_rule(pair: MarkerPair, n: int) -> LocalRule:
    radius = 3 * pair.length - 1
    return rule_from_function(n, 2 * radius + 1, marker_window(pair), anticipation=radius)


def marker_sample(pair: MarkerPair) -> BiInfiniteSeq:
    """A sequence whose left half is a-runs and right half b-runs."""
    return BiInfiniteSeq(pair.a, (), pair.b, 0).normalize()


def marker_automorphism(pair: MarkerPair, n: int) -> AnnotatedTransducer:
    ok, witness = validate_marker_pair(pair.a, pair.b)
    if not ok:
        raise InvalidMarkerError(f"Invalid marker pair {pair}: {witness}", {"witness": witness})
    if max(pair.a + pair.b) >= n:
        raise InvalidMarkerError(f"Marker words use letters outside the alphabet of size {n}")
    rule = marker_rule(pair, n)
    converted = local_rule_to_transducer(rule)
    logger.debug(f"marker_automorphism {pair}: {len(converted.machine.states)} states")
    result = calibrate(
        converted, lambda x: marker_direct(pair, x), marker_sample(pair), rule.m
    )
    if not in_Dn(result.machine):
        raise MembershipError(f"Marker map for {pair} landed outside D_n")
    return result
