"""The action of a synchronizing core on rotation classes of prime words."""

from collections.abc import Mapping

from errors import DomainError
from machines.base import DetTransducer
from machines.synchronization import sync_level
from words import (
    Word,
    canonical_rotation,
    enumerate_prime_classes,
    format_word,
    prime_root,
    reverse,
)

RotationMap = dict[Word, Word]


def class_image(T: DetTransducer, gamma: Word, level: int) -> Word:
    """Class of the prime root of what gamma writes around its own circuit."""
    reps = max(-(-level // len(gamma)), 1)
    q = T.run(T.states[0], gamma * reps)[0]
    target, out = T.run(q, gamma)
    if target != q:
        raise DomainError(f"{format_word(gamma)} does not close a circuit after level {level}")
    if not out:
        raise DomainError(f"Circuit of {gamma} writes nothing")
    return canonical_rotation(prime_root(out))


def pi_action(T: DetTransducer, k_max: int) -> RotationMap:
    """Map each prime class of length at most k_max to its image class."""
    if k_max < 1:
        raise DomainError(f"k_max must be positive, got {k_max}")
    level = sync_level(T).level
    return {
        gamma: class_image(T, gamma, level)
        for k in range(1, k_max + 1)
        for gamma in enumerate_prime_classes(T.n, k)
    }


def permutes_each_length(action: Mapping[Word, Word]) -> bool:
    """Images keep lengths and no two classes share an image."""
    if any(len(gamma) != len(image) for gamma, image in action.items()):
        return False
    return len(set(action.values())) == len(action)


def moved_classes(action: Mapping[Word, Word]) -> RotationMap:
    return {gamma: image for gamma, image in action.items() if gamma != image}


def follow(first: Mapping[Word, Word], second: Mapping[Word, Word]) -> RotationMap:
    """The action of first followed by second, on the classes first covers."""
    return {gamma: second[image] for gamma, image in first.items() if image in second}


def reverse_class(gamma: Word) -> Word:
    return canonical_rotation(reverse(gamma))


def conjugate_by_reversal(action: Mapping[Word, Word]) -> RotationMap:
    """[g] -> rev(action[rev g]), the action expected of the reverse automorphism."""
    return {
        reverse_class(gamma): reverse_class(image) for gamma, image in action.items()
    }
