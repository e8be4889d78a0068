"""Shared types and helpers for command handlers."""

import argparse
from dataclasses import dataclass, field
from typing import Any

from dynamics.annotations import AnnotatedTransducer, canonical_annotation
from errors import FormatError
from machines.base import DetTransducer, InitialDetTransducer, NondetTransducer
from machines.textformat import Machine, load_annotated, load_machine
from utils.config import get_config_value


@dataclass
class CommandResult:
    """Outcome of one command: exit code, report text and structured details."""
    exit_code: int
    message: str
    details: dict[str, Any] = field(default_factory=dict)


def ok(message: str, **details: Any) -> CommandResult:
    return CommandResult(0, message, details)


def bound(config: dict[str, Any], name: str) -> int | None:
    """A bound from config["bounds"]; None means the documented formula."""
    value = get_config_value(config, "bounds", name, default=None)
    return None if value is None else int(value)


def load_det(path: str) -> DetTransducer:
    machine = load_machine(path)
    return require_det(machine, path)


def require_det(machine: Machine, path: str) -> DetTransducer:
    if isinstance(machine, NondetTransducer):
        raise FormatError(f"{path}: expected a deterministic machine", {"path": path})
    if isinstance(machine, InitialDetTransducer):
        raise FormatError(f"{path}: expected a machine without an initial state", {"path": path})
    return machine


def load_pair(args: argparse.Namespace) -> AnnotatedTransducer:
    """
    Machine file plus annotation.

    --alpha file reads the file's annotation lines, canonical uses the
    least-zero potential, zero needs a synchronous machine. --offset adds a
    constant (a power of the shift).
    """
    machine, stored = load_annotated(args.file)
    T = require_det(machine, args.file)
    choice = args.alpha or ("file" if stored else "canonical")
    if choice == "file":
        if not stored:
            raise FormatError(f"{args.file}: no annotation lines", {"path": args.file})
        alpha = stored
    elif choice == "zero":
        alpha = {q: 0 for q in T.states}
    else:
        alpha = canonical_annotation(T)
    offset = getattr(args, "offset", 0) or 0
    return AnnotatedTransducer(T, {q: v + offset for q, v in alpha.items()})


def format_states(states) -> str:
    return "[" + ", ".join(states) + "]"
