"""Lifting D_n elements to initial transducers on the r-rooted Cantor space."""

from dataclasses import dataclass

from sympy import Rational

from errors import DomainError, MembershipError
from machines.base import DetTransducer, InitialDetTransducer, product_initial
from machines.core import initial_state_name, minimize, minimize_initial
from machines.images import image_antichain
from machines.signatures import in_Dn, loop_states
from utils.logger import get_logger
from words import Word, words_of_length

logger = get_logger()


@dataclass(frozen=True)
class LiftedTransducer:
    """
    Initial transducer acting after a root letter in [0, root_count).

    Root letters pass through unchanged.
    """
    root_count: int
    machine: InitialDetTransducer

    @property
    def n(self) -> int:
        return self.machine.n

    def __mul__(self, other: "LiftedTransducer") -> "LiftedTransducer":
        if self.root_count != other.root_count:
            raise DomainError("Lifts act on different rooted spaces")
        composed = minimize_initial(product_initial(self.machine, other.machine))
        return LiftedTransducer(self.root_count, composed)

    @property
    def is_identity(self) -> bool:
        base = self.machine.base
        q = self.machine.initial
        return len(base.states) == 1 and all(base.lam(x, q) == (x,) for x in base.letters)

    def run(self, root: int, w: Word) -> tuple[int, Word]:
        return root, self.machine.run(w)[1]


def lift_to_initial(D: DetTransducer, r: int = 1) -> LiftedTransducer:
    """
    Start D at a fresh state that reads x as if the past were x forever.

    From the new state, x leads to the x-loop state of D and writes what that
    state writes on x.
    """
    if not 1 <= r <= D.n - 1:
        raise DomainError(f"r must lie in [1, {D.n - 1}], got {r}")
    M = minimize(D)
    if not isinstance(M, DetTransducer) or not in_Dn(M):
        raise MembershipError("Only elements of D_n lift to the rooted space")
    loops = loop_states(M)
    start = initial_state_name(M)
    transition = dict(M.transition)
    output = dict(M.output)
    for x in M.letters:
        transition[(x, start)] = loops[x]
        output[(x, start)] = M.lam(x, loops[x])
    rebuilt = DetTransducer(M.n, (start,) + M.states, transition, output)
    lifted = minimize_initial(InitialDetTransducer(rebuilt, start))
    logger.debug(f"lift_to_initial: {len(lifted.base.states)} states")
    return LiftedTransducer(r, lifted)


def cylinder_images(lifted: LiftedTransducer, depth: int) -> list[Word]:
    """Cones (root letter first) whose union is the image of each depth-`depth` cylinder."""
    machine = lifted.machine
    cones = []
    for root in range(lifted.root_count):
        for v in words_of_length(lifted.n, depth):
            target, written = machine.base.run(machine.initial, v)
            for tail in image_antichain(machine.base, target).words:
                cones.append((root,) + written + tail)
    return cones


def cylinder_bijective(lifted: LiftedTransducer, depth: int) -> bool:
    """Images of all depth-`depth` cylinders are disjoint and fill the rooted space."""
    cones = sorted(cylinder_images(lifted, depth))
    for a, b in zip(cones, cones[1:]):
        if b[:len(a)] == a:
            logger.debug(f"cylinder_bijective: cones {a} and {b} meet")
            return False
    n, r = lifted.n, lifted.root_count
    total = sum(Rational(1, r * n ** (len(c) - 1)) for c in cones)
    return total == 1
