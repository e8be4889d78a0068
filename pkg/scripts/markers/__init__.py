"""Marker and conveyor-belt automorphisms and their lifts."""

from .conveyor import ConveyorSystem, conveyor_automorphism, load_conveyor, validate_conveyor
from .lift import LiftedTransducer, cylinder_bijective, lift_to_initial
from .marker import MarkerPair, marker_automorphism, search_marker_pair, validate_marker_pair

__all__ = [
    'ConveyorSystem',
    'LiftedTransducer',
    'MarkerPair',
    'conveyor_automorphism',
    'cylinder_bijective',
    'lift_to_initial',
    'load_conveyor',
    'marker_automorphism',
    'search_marker_pair',
    'validate_conveyor',
    'validate_marker_pair',
]
