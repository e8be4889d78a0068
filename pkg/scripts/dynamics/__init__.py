"""Annotated transducers acting on bi-infinite sequences."""

from .annotations import (
    AnnotatedTransducer,
    canonical_annotation,
    canonical_pair,
    identity_pair,
    shift_pair,
)
from .local_rules import LocalRule, local_rule_to_transducer
from .pi_action import pi_action
from .sequences import BiInfiniteSeq, apply, parse_sequence

__all__ = [
    'AnnotatedTransducer',
    'BiInfiniteSeq',
    'LocalRule',
    'apply',
    'canonical_annotation',
    'canonical_pair',
    'identity_pair',
    'local_rule_to_transducer',
    'parse_sequence',
    'pi_action',
    'shift_pair',
]
