"""Transducers over a finite alphabet and the operations on them."""

from .base import (
    DetTransducer,
    InitialDetTransducer,
    NondetEdge,
    NondetTransducer,
    State,
    ZxTransducer,
    product,
)
from .core import compose, is_isomorphic, minimize, minimize_initial
from .images import image_antichain, invert
from .synchronization import core, sync_level
from .textformat import export_dot, load_machine, parse, serialize

__all__ = [
    'DetTransducer',
    'InitialDetTransducer',
    'NondetEdge',
    'NondetTransducer',
    'State',
    'ZxTransducer',
    'compose',
    'core',
    'export_dot',
    'image_antichain',
    'invert',
    'is_isomorphic',
    'load_machine',
    'minimize',
    'minimize_initial',
    'parse',
    'product',
    'serialize',
    'sync_level',
]
