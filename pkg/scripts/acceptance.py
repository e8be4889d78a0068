"""
Acceptance checks run by the `suite` command.

Each check takes a SuiteContext and returns a CheckOutcome. Checks draw
their random inputs from the context's seeded generator, so a fixed seed
gives byte-identical reports.
"""

import random
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache, cached_property
from typing import Any

from dynamics.annotations import canonical_annotation, same_pair, shift_pair
from dynamics.pi_action import conjugate_by_reversal, pi_action
from dynamics.sequences import BiInfiniteSeq, apply
from errors import DegenerateError, SynctransError
from machines.base import DetTransducer, ZxTransducer, as_nondet
from machines.core import compose, is_isomorphic, minimize
from machines.images import invert, is_homeomorphism_state
from machines.library import (
    conditional_permutation,
    inclusion_example,
    permutation_transducer,
    shift_transducer,
    transposition,
)
from machines.reverse import rec, rev_automorphism, rev_sig
from machines.signatures import (
    block_extension,
    dn_witness,
    generator,
    in_Dn,
    in_Hn,
    in_Kn,
    in_Ln,
    loop_states,
    mn_class,
    mn_structure,
    sig,
    sig_k,
    sig_omega,
)
from machines.synchronization import check_product_level, sync_level
from markers.conveyor import conveyor_automorphism, permutation_system
from markers.lift import cylinder_bijective, lift_to_initial
from markers.marker import (
    MarkerPair,
    enumerate_marker_pairs,
    marker_automorphism,
    marker_direct,
    search_marker_pair,
)
from utils.config import get_config_value
from utils.logger import get_logger
from words import Word, canonical_rotation, format_word, is_prime, words_of_length

logger = get_logger()

GENERATORS = ((4, 2, 2), (4, 4, 1), (6, 2, 3), (6, 3, 2), (6, 6, 1))

# Alphabet size -> marker word length searched
MARKER_LENGTHS = {2: 3, 3: 2}

# (n, w, U, permutation) for the conveyor machines lifted by the lift check
LIFT_CONVEYORS = (
    (2, (0, 1), ((0, 0), (1, 1)), (1, 0)),
    (3, (0, 1), ((2, 2), (2, 0)), (1, 0)),
)

# Deepest cylinders checked for bijectivity after a lift
LIFT_DEPTH = 6

INCLUSION_POTENTIAL = {"a1": 1, "a2": 0, "a3": 2, "a4": 0, "a5": 1, "a6": 2}


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str


@dataclass
class SuiteContext:
    seed: int
    pool_size: int = 30
    samples: int = 50
    marker_pairs: int = 3
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    @classmethod
    def from_config(cls, config: dict[str, Any], seed: int | None = None) -> "SuiteContext":
        return cls(
            seed=seed if seed is not None else get_config_value(config, "suite", "seed", default=0),
            pool_size=get_config_value(config, "suite", "pool_size", default=30),
            samples=get_config_value(config, "suite", "samples", default=50),
            marker_pairs=get_config_value(config, "suite", "marker_pairs", default=3),
        )

    @cached_property
    def pool(self) -> list[DetTransducer]:
        return build_pool(self.pool_size, random.Random(self.seed))

    def same_n_pairs(self, count: int) -> list[tuple[DetTransducer, DetTransducer]]:
        by_n: dict[int, list[DetTransducer]] = {}
        for T in self.pool:
            by_n.setdefault(T.n, []).append(T)
        sizes = sorted(by_n)
        pairs = []
        for _ in range(count):
            group = by_n[self.rng.choice(sizes)]
            pairs.append((self.rng.choice(group), self.rng.choice(group)))
        return pairs


def base_machines() -> list[DetTransducer]:
    return list(_base_machines())


@cache
def _base_machines() -> tuple[DetTransducer, ...]:
    """
    Fixture, letter permutations, conditional permutations, T(d, e) generators
    and marker machines.

    Each marker machine also enters multiplied by every earlier machine on
    its alphabet, so the pool holds elements that change output length.
    """
    machines = [inclusion_example()]
    for n in (2, 3, 4):
        machines.append(permutation_transducer(n, transposition(n, 0, 1)))
    machines += hn_machines()
    for n, d, e in GENERATORS:
        machines.append(generator(n, d, e))
    products = []
    for M in marker_machines():
        for T in machines:
            if T.n != M.n:
                continue
            for P in (compose(M, T), compose(T, M)):
                if isinstance(P, DetTransducer):
                    products.append(P)
    return tuple(machines) + marker_machines() + tuple(products)


@cache
def marker_machines() -> tuple[DetTransducer, ...]:
    """The first marker pair's machine for each alphabet in MARKER_LENGTHS."""
    machines = []
    for n, length in MARKER_LENGTHS.items():
        pair = search_marker_pair(n, length)
        machines.append(marker_automorphism(pair, n).machine)
    return tuple(machines)


@cache
def conveyor_machines() -> tuple[DetTransducer, ...]:
    machines = []
    for n, w, U, sigma in LIFT_CONVEYORS:
        machines.append(conveyor_automorphism(permutation_system(n, w, U, sigma)).machine)
    return tuple(machines)


def hn_machines() -> list[DetTransducer]:
    """Two-state synchronous machines with bijective letter maps, n in {3, 4}."""
    machines = []
    for n in (3, 4):
        for c in range(n):
            a, b = [x for x in range(n) if x != c][:2]
            machines.append(conditional_permutation(n, c, transposition(n, a, b)))
    return machines


def build_pool(size: int, rng: random.Random) -> list[DetTransducer]:
    """Base machines topped up with products of two base machines on one alphabet."""
    base = base_machines()
    by_n: dict[int, list[DetTransducer]] = {}
    for T in base:
        by_n.setdefault(T.n, []).append(T)
    pool = list(base)
    sizes = sorted(by_n)
    while len(pool) < size:
        group = by_n[rng.choice(sizes)]
        M = compose(rng.choice(group), rng.choice(group))
        if isinstance(M, DetTransducer):
            pool.append(M)
    logger.debug(f"build_pool: {len(pool)} machines")
    return pool


def random_sequence(rng: random.Random, n: int) -> BiInfiniteSeq:
    def word(low: int, high: int) -> Word:
        return tuple(rng.randrange(n) for _ in range(rng.randint(low, high)))

    return BiInfiniteSeq(word(1, 3), word(0, 6), word(1, 3), rng.randint(-5, 5)).normalize()


def marker_sequence(rng: random.Random, pair: MarkerPair, n: int) -> BiInfiniteSeq:
    """Runs of marker words broken up by random blocks."""
    noise = tuple(rng.randrange(n) for _ in range(pair.length))
    chunks = [pair.a, pair.b, noise]
    center: Word = ()
    for _ in range(8):
        center += rng.choice(chunks)
    tails = [pair.a, pair.b, noise, (0,)]
    return BiInfiniteSeq(
        rng.choice(tails), center, rng.choice(tails), rng.randint(-3, 3)
    ).normalize()


def is_identity_machine(M) -> bool:
    if isinstance(M, ZxTransducer) or len(M.states) != 1:
        return False
    q = M.states[0]
    return all(M.lam(x, q) == (x,) for x in M.letters)


def pi_length(n: int) -> int:
    """Longest class length, at most 8, with n^k <= 4096."""
    k = 1
    while k < 8 and n ** (k + 1) <= 4096:
        k += 1
    return k


def _minimal(T: DetTransducer) -> DetTransducer:
    M = minimize(T)
    if not isinstance(M, DetTransducer):
        raise DegenerateError("Pool machine minimized to a Z_x transducer")
    return M


def check_generator_signatures(ctx: SuiteContext) -> CheckOutcome:
    name = "generator_signatures"
    expected = {(2, 3): 3, (3, 2): 2, (6, 1): 1}
    for (d, e), value in expected.items():
        T = generator(6, d, e)
        got = sig(T)
        if got.residue != value:
            return CheckOutcome(name, False, f"sig(T({d},{e})) = {got}, expected {value}")
        zero = {q: 0 for q in T.states}
        for k in range(1, 5):
            want = e * 6 ** (k - 1) % (6 ** k - 1)
            have = sig_k(T, zero, k)
            if have != want:
                return CheckOutcome(
                    name, False, f"sig_{k}(T({d},{e})) = {have}, expected {want}"
                )
            if k <= 2:
                extended, _ = block_extension(T, zero, k)
                if sig(extended).residue != want:
                    return CheckOutcome(
                        name, False, f"sig of the {k}-block extension of T({d},{e}) is not {want}"
                    )
    return CheckOutcome(
        name, True, "T(2,3)=3, T(3,2)=2, T(6,1)=1 (mod 5); sig_k for k<=4, block extensions k<=2"
    )


def check_shift_realization(ctx: SuiteContext) -> CheckOutcome:
    name = "shift_realization"
    for n in (2, 3, 4, 6):
        if not is_identity_machine(minimize(shift_transducer(n))):
            return CheckOutcome(name, False, f"minimize(Sigma_{n}) is not the identity")
        pair = shift_pair(n)
        for _ in range(ctx.samples):
            x = random_sequence(ctx.rng, n)
            if apply(pair, x) != x.shifted(1):
                return CheckOutcome(name, False, f"shift pair disagrees on {x}")
    return CheckOutcome(name, True, f"n in {{2,3,4,6}}, {ctx.samples} sequences each")


def check_group_laws(ctx: SuiteContext) -> CheckOutcome:
    name = "group_laws"
    for T in ctx.pool:
        inverse = invert(T)
        if not is_identity_machine(compose(T, inverse)):
            return CheckOutcome(
                name, False, f"T * T^-1 is not the identity for a {len(T.states)}-state machine"
            )
        if not is_isomorphic(invert(inverse), _minimal(T)):
            return CheckOutcome(name, False, "invert(invert(T)) differs from T")
    checked = 0
    for T, U in ctx.same_n_pairs(len(ctx.pool)):
        level = check_product_level(T, U)
        if level.guaranteed and not level.holds:
            return CheckOutcome(name, False, f"product level {level.measured} > {level.bound}")
        checked += 1
    return CheckOutcome(name, True, f"{len(ctx.pool)} machines, {checked} level checks")


def check_signature_homomorphisms(ctx: SuiteContext) -> CheckOutcome:
    name = "signature_homomorphisms"
    pairs = ctx.same_n_pairs(len(ctx.pool) // 2)
    for T, U in pairs:
        P = _minimal(compose(T, U))
        if sig(P) != sig(T) * sig(U):
            return CheckOutcome(name, False, f"sig not multiplicative for n={T.n}")
        if sig_omega(P) != sig_omega(T) * sig_omega(U):
            return CheckOutcome(name, False, f"sig_omega not multiplicative for n={T.n}")
    ln_members = [T for T in ctx.pool if in_Ln(T)]
    for T in ln_members:
        value = sig(T) * rev_sig(T)
        if value.residue != 1 % value.modulus:
            return CheckOutcome(name, False, f"sig * rev_sig = {value} for an L_n member")
    return CheckOutcome(
        name, True, f"{len(pairs)} products, {len(ln_members)} L_n members for rev_sig"
    )


def check_mn_structure(ctx: SuiteContext) -> CheckOutcome:
    name = "mn_structure"
    for n in (2, 3):
        if mn_structure(n) != (0, 1):
            return CheckOutcome(name, False, f"M_{n} is not trivial: {mn_structure(n)}")
    if mn_structure(4) != (0, 2) or mn_class(4, 2).order() != 2:
        return CheckOutcome(name, False, "M_4 is not Z/2Z generated by [2]")
    classes = [mn_class(6, 2 ** j) for j in range(7)]
    if mn_structure(6) != (1, 1) or len(set(classes)) != len(classes):
        return CheckOutcome(name, False, "classes of 2^j in M_6 are not distinct")
    return CheckOutcome(name, True, "M_2, M_3 trivial; M_4 = Z/2Z; M_6 infinite")


def check_reverse_automorphism(ctx: SuiteContext) -> CheckOutcome:
    name = "reverse_automorphism"
    for T in ctx.pool:
        M = _minimal(T)
        R = rev_automorphism(M)
        if not is_isomorphic(rev_automorphism(R), M):
            return CheckOutcome(name, False, "rev_automorphism is not an involution")
        if not is_isomorphic(_minimal(rec(as_nondet(M))), M):
            return CheckOutcome(name, False, "rec of a deterministic machine changed it")
        k = pi_length(M.n)
        if pi_action(R, k) != conjugate_by_reversal(pi_action(M, k)):
            return CheckOutcome(name, False, f"Pi conjugation fails up to length {k}")
    pairs = ctx.same_n_pairs(len(ctx.pool) // 3)
    for T, U in pairs:
        left = rev_automorphism(_minimal(compose(T, U)))
        right = compose(rev_automorphism(T), rev_automorphism(U))
        if not is_isomorphic(left, right):
            return CheckOutcome(name, False, f"rev_automorphism not multiplicative for n={T.n}")
    return CheckOutcome(name, True, f"{len(ctx.pool)} machines, {len(pairs)} products")


def check_hn_expulsion(ctx: SuiteContext) -> CheckOutcome:
    name = "hn_expulsion"
    expelled = 0
    for T in hn_machines():
        if len(_minimal(T).states) < 2 or not in_Hn(T):
            return CheckOutcome(name, False, "conditional permutation is not a proper H_n member")
        if in_Hn(rev_automorphism(T)):
            return CheckOutcome(name, False, "reverse of an H_n machine stayed in H_n")
        expelled += 1
    fixed = 0
    for n in (2, 3, 4):
        for a, b in ((0, 1), (0, n - 1)):
            P = permutation_transducer(n, transposition(n, a, b))
            if not is_isomorphic(rev_automorphism(P), _minimal(P)):
                return CheckOutcome(name, False, "a one-state machine moved under reversal")
            fixed += 1
    return CheckOutcome(name, True, f"{expelled} expelled, {fixed} one-state machines fixed")


def check_fixture_facts(ctx: SuiteContext) -> CheckOutcome:
    name = "fixture_facts"
    T = inclusion_example()
    if not (in_Ln(T) and in_Kn(T)):
        return CheckOutcome(name, False, "fixture is not in L_2 = K_2")
    if canonical_annotation(T) != INCLUSION_POTENTIAL:
        return CheckOutcome(name, False, f"potential {canonical_annotation(T)}")
    if is_homeomorphism_state(T, "a1"):
        return CheckOutcome(name, False, "a1 is a homeomorphism state")
    if in_Dn(T) or dn_witness(T) != "a1":
        return CheckOutcome(name, False, "fixture should leave D_2 at a1")
    return CheckOutcome(name, True, "in L_2 = K_2, not in D_2 (witness a1)")


def check_markers(ctx: SuiteContext) -> CheckOutcome:
    name = "markers"
    count = 0
    for n, length in MARKER_LENGTHS.items():
        pairs = enumerate_marker_pairs(n, length, limit=ctx.marker_pairs)
        for pair in pairs:
            P = marker_automorphism(pair, n)
            if not (P * P).is_identity:
                return CheckOutcome(name, False, f"{pair} does not square to the identity")
            if not in_Dn(P.machine):
                return CheckOutcome(name, False, f"{pair} lies outside D_{n}")
            if any(P.annotation[q] != 0 for q in loop_states(P.machine).values()):
                return CheckOutcome(name, False, f"{pair} has a non-zero loop annotation")
            if is_prime(pair.a) and is_prime(pair.b):
                action = pi_action(P.machine, length)
                a, b = canonical_rotation(pair.a), canonical_rotation(pair.b)
                if action[a] != b or action[b] != a:
                    return CheckOutcome(name, False, f"{pair} does not swap its classes")
                if any(g != h for g, h in action.items() if len(g) < length):
                    return CheckOutcome(name, False, f"{pair} moves a shorter class")
            for _ in range(ctx.samples):
                x = marker_sequence(ctx.rng, pair, n)
                if apply(P, x) != marker_direct(pair, x):
                    return CheckOutcome(name, False, f"{pair} disagrees with f_(a,b) on {x}")
            count += 1
    return CheckOutcome(name, True, f"{count} marker pairs")


def check_conveyor(ctx: SuiteContext) -> CheckOutcome:
    name = "conveyor"
    w = (0, 1)
    U = ((0, 0), (1, 1))
    images = {
        "id": conveyor_automorphism(permutation_system(2, w, U, [0, 1])),
        "flip": conveyor_automorphism(permutation_system(2, w, U, [1, 0])),
    }
    if not images["id"].is_identity:
        return CheckOutcome(name, False, "identity rule does not give the identity")
    if images["flip"].is_identity or same_pair(images["flip"], images["id"]):
        return CheckOutcome(name, False, "distinct automorphisms share an image")
    if not (images["flip"] * images["flip"]).is_identity:
        return CheckOutcome(name, False, "image of flip * flip is not the image of id")
    if not same_pair(images["flip"] * images["id"], images["flip"]):
        return CheckOutcome(name, False, "image of flip * id is not the image of flip")
    return CheckOutcome(name, True, "w=0,1 U={0,0; 1,1}: id, flip, flip^2")


def dn_pool() -> list[DetTransducer]:
    """Permutations, H_n generators, marker machines and conveyor machines."""
    machines = [permutation_transducer(3, transposition(3, 0, 1))]
    machines += [permutation_transducer(3, transposition(3, 1, 2))]
    return machines + hn_machines() + list(marker_machines()) + list(conveyor_machines())


def check_lift(ctx: SuiteContext) -> CheckOutcome:
    name = "lift"
    machines = dn_pool()
    cases = 0
    for r in (1, 2):
        for T in machines:
            # r ranges over [1, n - 1]
            if r >= T.n:
                continue
            lifted = lift_to_initial(T, r)
            inverse = lift_to_initial(invert(T), r)
            if not (lifted * inverse).is_identity:
                return CheckOutcome(name, False, f"lift does not respect inverses (r={r})")
            depth = min(sync_level(_minimal(T)).level + 2, LIFT_DEPTH)
            if not cylinder_bijective(lifted, depth):
                return CheckOutcome(name, False, f"lift not bijective on depth-{depth} cylinders")
            U = ctx.rng.choice([M for M in machines if M.n == T.n])
            composed = lift_to_initial(compose(T, U), r)
            joined = lifted * lift_to_initial(U, r)
            for v in words_of_length(T.n, 4):
                if composed.machine.run(v)[1] != joined.machine.run(v)[1]:
                    return CheckOutcome(
                        name, False, f"lift does not respect products on {format_word(v)}"
                    )
            cases += 1
    return CheckOutcome(name, True, f"{len(machines)} D_n machines, r in {{1,2}}, {cases} cases")


CHECKS: dict[str, Callable[[SuiteContext], CheckOutcome]] = {
    "generator_signatures": check_generator_signatures,
    "shift_realization": check_shift_realization,
    "group_laws": check_group_laws,
    "signature_homomorphisms": check_signature_homomorphisms,
    "mn_structure": check_mn_structure,
    "reverse_automorphism": check_reverse_automorphism,
    "hn_expulsion": check_hn_expulsion,
    "fixture_facts": check_fixture_facts,
    "markers": check_markers,
    "conveyor": check_conveyor,
    "lift": check_lift,
}


def run_checks(ctx: SuiteContext, names: list[str] | None = None) -> list[CheckOutcome]:
    """
    Run the named checks in registry order.

    A check that raises reports the error as its failure detail.
    """
    outcomes = []
    for check_name, check in CHECKS.items():
        if names and check_name not in names:
            continue
        logger.debug(f"suite: running {check_name}")
        try:
            outcomes.append(check(ctx))
        except SynctransError as e:
            outcomes.append(CheckOutcome(check_name, False, f"error: {e.message}"))
    return outcomes
