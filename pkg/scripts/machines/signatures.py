"""Signature homomorphisms, M_n arithmetic, the T(d, e) generators and membership tests."""

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd

from sympy import Rational, factorint

from errors import DomainError, MembershipError, SignatureMismatchError
from utils.logger import get_logger
from words import Word, format_word, words_of_length

from .base import DetTransducer, State, ZxTransducer
from .core import minimize
from .images import image_antichain, invert, is_automaton_invertible, is_homeomorphism_state
from .synchronization import sink_component, sync_level

logger = get_logger()


def prime_support(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Ascending primes of n and their exponents."""
    factors = factorint(n)
    primes = tuple(sorted(factors))
    return primes, tuple(factors[p] for p in primes)


@dataclass(frozen=True)
class MnElement:
    """
    Class of a product of prime divisors of n modulo multiplication by n.

    Exponent vectors are reduced by integer multiples of the exponent vector
    of n so that the last coordinate lies in [0, L_r).
    """
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    lattice: tuple[int, ...]

    def __post_init__(self):
        t = self.exponents[-1] // self.lattice[-1]
        if t:
            reduced = tuple(v - t * size for v, size in zip(self.exponents, self.lattice))
            object.__setattr__(self, "exponents", reduced)

    def __mul__(self, other: "MnElement") -> "MnElement":
        if self.primes != other.primes:
            raise DomainError("M_n elements for different n")
        return MnElement(
            self.primes,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
            self.lattice,
        )

    def inverse(self) -> "MnElement":
        return MnElement(self.primes, tuple(-v for v in self.exponents), self.lattice)

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int | None:
        """Finite order, or None when the class has infinite order."""
        if self.is_identity:
            return 1
        ratios = {Rational(v, size) for v, size in zip(self.exponents, self.lattice)}
        if len(ratios) != 1:
            return None
        return int(ratios.pop().q)

    def __str__(self) -> str:
        terms = [f"{p}^{v}" for p, v in zip(self.primes, self.exponents) if v]
        return "[" + (" * ".join(terms) or "1") + "]"


def mn_class(n: int, m: int) -> MnElement:
    if m < 1:
        raise DomainError(f"M_{n} classes need a positive integer, got {m}")
    primes, lattice = prime_support(n)
    factors = factorint(m)
    foreign = [p for p in factors if p not in primes]
    if foreign:
        raise DomainError(
            f"{m} has prime factors {foreign} not dividing {n}",
            {"foreign": foreign},
        )
    return MnElement(primes, tuple(factors.get(p, 0) for p in primes), lattice)


def mn_structure(n: int) -> tuple[int, int]:
    """(free rank, torsion order) of M_n, i.e. Z^(r-1) x Z/lZ."""
    primes, lattice = prime_support(n)
    torsion = 0
    for size in lattice:
        torsion = gcd(torsion, size)
    return len(primes) - 1, torsion


@dataclass(frozen=True)
class SigValue:
    residue: int
    modulus: int

    def __mul__(self, other: "SigValue") -> "SigValue":
        return SigValue((self.residue * other.residue) % self.modulus, self.modulus)

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def _minimal(T: DetTransducer) -> DetTransducer:
    M = minimize(T)
    if isinstance(M, ZxTransducer):
        raise MembershipError("Z_x transducers are not group elements")
    return M


def _constant(values: Mapping[State, object], what: str):
    distinct = set(values.values())
    if len(distinct) != 1:
        raise SignatureMismatchError(
            f"{what} differs between states",
            {"values": {q: str(v) for q, v in values.items()}},
        )
    return distinct.pop()


def sig(T: DetTransducer, bound: int | None = None) -> SigValue:
    """Number of image cones mod n-1, checked at every state of the minimal form."""
    M = _minimal(T)
    modulus = M.n - 1
    per_state = {q: len(image_antichain(M, q, bound)) % modulus for q in M.states}
    return SigValue(_constant(per_state, "sig"), modulus)


def sig_omega(T: DetTransducer, bound: int | None = None) -> MnElement:
    M = _minimal(T)
    per_state = {
        q: mn_class(M.n, image_antichain(M, q, bound).uniform_count(M.n)[0])
        for q in M.states
    }
    return _constant(per_state, "sig_omega")


def sig_k(T: DetTransducer, alpha: Mapping[State, int], k: int,
          bound: int | None = None) -> int:
    """
    Alphabet-power signature of the pair (T, alpha), modulo n^k - 1.

    With (s, D) the uniform cone count at q, the value is s * n^(b mod k)
    for b = -(D + alpha(q)); it does not depend on q.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    modulus = T.n ** k - 1
    per_state = {}
    for q in T.states:
        s, depth = image_antichain(T, q, bound).uniform_count(T.n)
        b = -(depth + alpha[q])
        per_state[q] = (s * pow(T.n, b % k, modulus)) % modulus
    return _constant(per_state, "sig_k")


def block_extension(T: DetTransducer, alpha: Mapping[State, int],
                    k: int) -> tuple[DetTransducer, dict[State, int]]:
    """
    The pair (T, alpha) acting on X_(n^k), with letter i read as the i-th
    word of X_n^k in lexicographic order.

    A state is q with the alpha(q) mod k output letters that do not yet fill
    a block; its annotation is alpha(q) // k blocks. The result is cut down
    to its terminal component.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    blocks = list(words_of_length(T.n, k))
    index = {block: i for i, block in enumerate(blocks)}

    def name(q: State, pending: Word) -> State:
        return f"{q}:" + ".".join(str(v) for v in pending)

    states = []
    transition = {}
    output = {}
    annotation = {}
    for q in T.states:
        for pending in words_of_length(T.n, alpha[q] % k):
            here = name(q, pending)
            states.append(here)
            annotation[here] = alpha[q] // k
            for c, block in enumerate(blocks):
                target, written = T.run(q, block)
                full = pending + written
                cut = len(full) - len(full) % k
                if len(full) - cut != alpha[target] % k:
                    raise DomainError(
                        f"Annotation rule fails on the block {format_word(block)} from {q}",
                        {"state": q, "block": format_word(block)},
                    )
                transition[(c, here)] = name(target, full[cut:])
                output[(c, here)] = tuple(index[full[i:i + k]] for i in range(0, cut, k))
    extended = sink_component(DetTransducer(T.n ** k, tuple(states), transition, output))
    logger.debug(f"block_extension: k={k}, {len(states)} -> {len(extended.states)} states")
    return extended, {q: annotation[q] for q in extended.states}


def potential(T: DetTransducer, base: State | None = None) -> dict[State, int] | None:
    """
    Integer labelling with label(pi(x, q)) = label(q) + |lambda(x, q)| - 1, or None.

    Labels propagate along edges in both directions from base, then every
    edge is checked.
    """
    base = T.states[0] if base is None else base
    label = {base: 0}
    reverse: dict[State, list[tuple[State, int]]] = {}
    for (x, q), t in T.transition.items():
        reverse.setdefault(t, []).append((q, len(T.lam(x, q)) - 1))
    queue = deque([base])
    while queue:
        q = queue.popleft()
        for x in T.letters:
            t = T.pi(x, q)
            if t not in label:
                label[t] = label[q] + len(T.lam(x, q)) - 1
                queue.append(t)
        for source, weight in reverse.get(q, []):
            if source not in label:
                label[source] = label[q] - weight
                queue.append(source)
    for (x, q), t in T.transition.items():
        if q in label and label[t] != label[q] + len(T.lam(x, q)) - 1:
            logger.debug(f"potential: edge {q} -{x}-> {t} breaks length balance")
            return None
    return label


def in_On(T: DetTransducer) -> bool:
    try:
        M = _minimal(T)
        inverse = invert(M)
        sync_level(inverse)
    except DomainError as e:
        logger.debug(f"in_On: {e.message}")
        return False
    return True


def in_Onr(T: DetTransducer, r: int) -> bool:
    if not 1 <= r <= T.n - 1:
        raise DomainError(f"r must lie in [1, {T.n - 1}], got {r}")
    if not in_On(T):
        return False
    modulus = T.n - 1
    return (r * sig(T).residue) % modulus == r % modulus


def in_Ln(T: DetTransducer) -> bool:
    return potential(T) is not None


def in_Kn(T: DetTransducer) -> bool:
    return sig_omega(T).is_identity


def loop_states(T: DetTransducer) -> dict[int, State]:
    """The state forced by x^k for each letter x."""
    level = sync_level(T).level
    return {x: T.run(T.states[0], (x,) * max(level, 1))[0] for x in T.letters}


def dn_witness(T: DetTransducer) -> State | None:
    """First letter-loop state that is not a homeomorphism state."""
    M = _minimal(T)
    for state in loop_states(M).values():
        if not is_homeomorphism_state(M, state):
            return state
    return None


def in_Dn(T: DetTransducer) -> bool:
    return in_Kn(T) and dn_witness(T) is None


def in_Hn(T: DetTransducer) -> bool:
    """Synchronous, letterwise invertible and bisynchronizing."""
    if not T.is_synchronous or not is_automaton_invertible(T):
        return False
    try:
        inverse = invert(T)
        sync_level(T)
        sync_level(inverse)
    except DomainError:
        return False
    return True


def mixed_radix_digits(m: int, primes: tuple[int, ...],
                       lattice: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Digit blocks of a letter, ascending prime blocks, most significant digit first."""
    blocks = []
    for p, size in reversed(list(zip(primes, lattice))):
        digits = []
        for _ in range(size):
            m, r = divmod(m, p)
            digits.append(r)
        blocks.append(tuple(reversed(digits)))
    return list(reversed(blocks))


def mixed_radix_letter(blocks: list[tuple[int, ...]], primes: tuple[int, ...]) -> int:
    m = 0
    for p, digits in zip(primes, blocks):
        for d in digits:
            m = m * p + d
    return m


def generator(n: int, d: int, e: int) -> DetTransducer:
    """
    T(d, e): d states remembering the low digits each prime block gives up.

    With d = prod p_i^s_i, a state holds s_i digits per block. Reading a
    letter it writes, per block, its stored digits followed by the high
    L_i - s_i input digits, and stores the low s_i input digits.
    """
    if d * e != n or d <= 1:
        raise DomainError(f"Need d * e = n with d > 1, got d={d}, e={e}, n={n}")
    primes, lattice = prime_support(n)
    d_factors = factorint(d)
    kept = tuple(d_factors.get(p, 0) for p in primes)
    digit_ranges = [range(p) for p, s in zip(primes, kept) for _ in range(s)]
    stored = list(cartesian(*digit_ranges))

    def name(digits: tuple[int, ...]) -> State:
        return "q" + ".".join(str(v) for v in digits)

    def split(digits: tuple[int, ...]) -> list[tuple[int, ...]]:
        blocks, pos = [], 0
        for s in kept:
            blocks.append(digits[pos:pos + s])
            pos += s
        return blocks

    transition = {}
    output = {}
    for digits in stored:
        held = split(digits)
        for m in range(n):
            blocks = mixed_radix_digits(m, primes, lattice)
            written = [
                held[i] + block[:len(block) - kept[i]] for i, block in enumerate(blocks)
            ]
            remembered = tuple(
                v for i, block in enumerate(blocks)
                for v in block[len(block) - kept[i]:]
            )
            transition[(m, name(digits))] = name(remembered)
            output[(m, name(digits))] = (mixed_radix_letter(written, primes),)
    return DetTransducer(n, tuple(name(s) for s in stored), transition, output)
