"""Words over the alphabet X_n = {0, ..., n-1}: primality, rotations, necklaces."""

from itertools import product

from sympy import divisors, factorint
from sympy.utilities.iterables import minlex, necklaces

from errors import FormatError, WordError

Word = tuple[int, ...]

EMPTY: Word = ()


def parse_word(text: str, n: int | None = None) -> Word:
    """
    Parse a comma-separated word literal.

    "-" (or an empty string) denotes the empty word. When n is given every
    letter must lie in [0, n).
    """
    text = text.strip()
    if text in ("", "-"):
        return EMPTY
    try:
        letters = tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise FormatError(f"Bad word literal: {text!r}", {"literal": text}) from e
    if n is not None:
        check_letters(letters, n)
    return letters


def format_word(w: Word) -> str:
    """Serialize a word; the empty word becomes "-"."""
    if not w:
        return "-"
    return ",".join(str(x) for x in w)


def check_letters(w: Word, n: int) -> None:
    for x in w:
        if not 0 <= x < n:
            raise FormatError(
                f"Letter {x} outside alphabet of size {n}",
                {"letter": x, "alphabet": n},
            )


def prime_root(w: Word) -> Word:
    """Return the shortest gamma with w = gamma^k."""
    if not w:
        raise WordError("empty word has no primality")
    size = len(w)
    for d in divisors(size):
        if w == w[:d] * (size // d):
            return w[:d]
    return w


def is_prime(w: Word) -> bool:
    """True iff w is not a proper power of a shorter word."""
    return len(prime_root(w)) == len(w)


def canonical_rotation(w: Word) -> Word:
    """Lexicographically least rotation of a non-empty word."""
    if not w:
        raise WordError("empty word has no rotations")
    return tuple(minlex(w))


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def reverse(w: Word) -> Word:
    return tuple(reversed(w))


def common_prefix(words) -> Word:
    """Greatest common prefix of a non-empty iterable of words."""
    it = iter(words)
    prefix = next(it)
    for w in it:
        i = 0
        limit = min(len(prefix), len(w))
        while i < limit and prefix[i] == w[i]:
            i += 1
        prefix = prefix[:i]
        if not prefix:
            break
    return prefix


def is_prefix(u: Word, w: Word) -> bool:
    return len(u) <= len(w) and w[:len(u)] == u


def enumerate_prime_classes(n: int, k: int) -> list[Word]:
    """One canonical representative per rotation class of prime words of length k."""
    if n < 2 or k < 1:
        raise WordError(f"Need n >= 2 and k >= 1, got n={n}, k={k}")
    return sorted(tuple(w) for w in necklaces(k, n) if is_prime(tuple(w)))


def _mobius(d: int) -> int:
    exponents = factorint(d).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def necklace_count(n: int, k: int) -> int:
    """Number of prime rotation classes of length k over n letters."""
    total = sum(_mobius(d) * n ** (k // d) for d in divisors(k))
    return total // k


def words_of_length(n: int, k: int):
    """All words of length k in lexicographic order."""
    return product(range(n), repeat=k)
