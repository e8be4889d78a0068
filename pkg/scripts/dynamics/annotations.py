"""Annotated transducers: pairs (T, alpha) acting as shift-commuting maps."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from errors import DomainError, MembershipError, NotInvertibleError
from machines.base import DetTransducer, State, ZxTransducer, product, product_name
from machines.core import is_isomorphic, reduce_pair
from machines.images import invert
from machines.library import identity
from machines.signatures import potential
from machines.synchronization import sink_component, sync_level
from utils.logger import get_logger

logger = get_logger()


def check_annotation(T: DetTransducer, alpha: Mapping[State, int]) -> None:
    """Raise unless alpha(pi(x, q)) = alpha(q) + |lambda(x, q)| - 1 on every edge."""
    missing = [q for q in T.states if q not in alpha]
    if missing:
        raise DomainError("Annotation misses states", {"states": missing})
    for (x, q), target in T.transition.items():
        if alpha[target] != alpha[q] + len(T.lam(x, q)) - 1:
            raise DomainError(
                f"Annotation rule fails on edge {q} -{x}-> {target}",
                {"state": q, "letter": x, "target": target},
            )


def canonical_annotation(T: DetTransducer) -> dict[State, int]:
    """The annotation whose least value is 0."""
    label = potential(T)
    if label is None:
        raise MembershipError("Transducer does not preserve circuit lengths, so it is not in L_n")
    low = min(label.values())
    return {q: label[q] - low for q in T.states}


@dataclass(frozen=True)
class AnnotatedTransducer:
    """A transducer in L_n with an annotation; together they name a shift endomorphism."""
    machine: DetTransducer
    annotation: Mapping[State, int] = field(hash=False)

    def __post_init__(self):
        check_annotation(self.machine, self.annotation)

    @cached_property
    def level(self) -> int:
        return sync_level(self.machine).level

    @property
    def n(self) -> int:
        return self.machine.n

    def forced(self, w) -> State:
        """State forced by a word at least as long as the synchronizing level."""
        return self.machine.run(self.machine.states[0], w)[0]

    def shifted(self, i: int) -> "AnnotatedTransducer":
        """Compose with shift^i."""
        return AnnotatedTransducer(self.machine, {q: a + i for q, a in self.annotation.items()})

    def __mul__(self, other: "AnnotatedTransducer") -> "AnnotatedTransducer":
        machine, annotation = product_annotation(
            self.machine, self.annotation, other.machine, other.annotation
        )
        return AnnotatedTransducer(machine, annotation)

    def inverse(self) -> "AnnotatedTransducer":
        return invert_pair(self)

    def power(self, k: int) -> "AnnotatedTransducer":
        base = self if k >= 0 else self.inverse()
        result = identity_pair(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    @property
    def is_identity(self) -> bool:
        return is_identity_pair(self)


def shift_pair(n: int, i: int = 1) -> AnnotatedTransducer:
    """shift^i: the identity transducer annotated with the constant i."""
    machine = identity(n)
    return AnnotatedTransducer(machine, {machine.states[0]: i})


def identity_pair(n: int) -> AnnotatedTransducer:
    return shift_pair(n, 0)


def canonical_pair(T: DetTransducer) -> AnnotatedTransducer:
    return AnnotatedTransducer(T, canonical_annotation(T))


def product_annotation(
    T: DetTransducer, alpha: Mapping[State, int], U: DetTransducer, beta: Mapping[State, int]
) -> tuple[DetTransducer, dict[State, int]]:
    """
    Minimal machine of T followed by U with the annotation of the composite map.

    A product state (s, t) starts at alpha(s) + beta(t); removing the
    incomplete response of (s, t) moves it |Lambda(s, t)| letters on.
    """
    P = product(T, U)
    gamma = {product_name(s, t): alpha[s] + beta[t] for s in T.states for t in U.states}
    core = sink_component(P)
    machine, annotation = reduce_pair(core, {q: gamma[q] for q in core.states})
    logger.debug(f"product_annotation: {len(P.states)} -> {len(machine.states)} states")
    return machine, annotation


def is_identity_pair(pair: AnnotatedTransducer) -> bool:
    M = pair.machine
    if len(M.states) != 1:
        return False
    q = M.states[0]
    return all(M.lam(x, q) == (x,) for x in M.letters) and pair.annotation[q] == 0


def invert_pair(pair: AnnotatedTransducer) -> AnnotatedTransducer:
    """
    The pair undoing `pair`.

    The inverse machine takes its canonical annotation, then the constant
    left over in the product with `pair` is subtracted.
    """
    inverse = invert(pair.machine)
    kappa = canonical_annotation(inverse)
    machine, annotation = product_annotation(
        pair.machine, pair.annotation, inverse, kappa
    )
    if len(machine.states) != 1:
        raise NotInvertibleError(
            "Product with the computed inverse is not the identity",
            {"states": len(machine.states)},
        )
    c = annotation[machine.states[0]]
    return AnnotatedTransducer(inverse, {q: v - c for q, v in kappa.items()})


def same_pair(p: AnnotatedTransducer, q: AnnotatedTransducer) -> bool:
    """Equal as maps: isomorphic machines with matching annotations."""
    if isinstance(p.machine, ZxTransducer) or isinstance(q.machine, ZxTransducer):
        return False
    if not is_isomorphic(p.machine, q.machine):
        return False
    reset = (0,) * max(p.level, q.level, 1)
    return p.annotation[p.forced(reset)] == q.annotation[q.forced(reset)]
