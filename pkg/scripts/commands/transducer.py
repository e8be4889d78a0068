"""Handlers for verbs that take or produce whole machines."""

import argparse
from pathlib import Path
from typing import Any

from errors import FormatError, NotSynchronizingError
from machines.base import InitialDetTransducer, NondetTransducer, product
from machines.core import compose, minimize, minimize_initial
from machines.images import image_antichain, invert
from machines.signatures import generator
from machines.synchronization import core, nondet_sync_check, sink_component, sync_level
from machines.textformat import export_dot, load_machine, save_machine, serialize
from utils.config import get_config_value
from words import format_word

from .base import CommandResult, bound, format_states, load_det, ok


def emit_machine(machine, args: argparse.Namespace, **details: Any) -> CommandResult:
    """Print the machine, or write it to --output when given."""
    target = getattr(args, "output", None)
    if target:
        save_machine(machine, target, details.get("annotation"))
        return ok(f"wrote {target}", path=str(Path(target)), **details)
    return ok(serialize(machine, details.get("annotation")).rstrip("\n"), **details)


def cmd_validate(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    machine = load_machine(args.file)
    if isinstance(machine, NondetTransducer):
        return ok(
            f"valid: non-deterministic, n={machine.n}, {len(machine.states)} states, "
            f"{len(machine.edges)} edges",
            kind="nondet", n=machine.n, states=len(machine.states),
        )
    if isinstance(machine, InitialDetTransducer):
        return ok(
            f"valid: initial, n={machine.n}, {len(machine.base.states)} states, "
            f"initial {machine.initial}",
            kind="initial", n=machine.n, states=len(machine.base.states),
        )
    try:
        level = sync_level(machine, bound(config, "max_k")).level
        sync = f"synchronizing at level {level}"
    except NotSynchronizingError:
        level = None
        sync = "not strongly synchronizing"
    return ok(
        f"valid: deterministic, n={machine.n}, {len(machine.states)} states, {sync}",
        kind="det", n=machine.n, states=len(machine.states), level=level,
    )


def cmd_minimize(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    machine = load_machine(args.file)
    depth = bound(config, "depth")
    if isinstance(machine, NondetTransducer):
        raise FormatError(f"{args.file}: minimize needs a deterministic machine")
    if isinstance(machine, InitialDetTransducer):
        return emit_machine(minimize_initial(machine, depth), args)
    return emit_machine(minimize(machine, depth), args)


def cmd_product(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    T = load_det(args.file)
    U = load_det(args.other)
    if args.reduce:
        return emit_machine(compose(T, U), args)
    return emit_machine(product(T, U), args)


def cmd_invert(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    T = load_det(args.file)
    return emit_machine(invert(T, bound(config, "remainder")), args)


def nd_check_length(config: dict[str, Any], N: NondetTransducer) -> int:
    configured = bound(config, "nd_check_length")
    if configured is not None:
        return configured
    cap = get_config_value(config, "bounds", "nd_check_cap", default=None)
    length = 2 * len(N.edges)
    return length if cap is None else min(length, int(cap))


def cmd_sync(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    machine = load_machine(args.file)
    if isinstance(machine, NondetTransducer):
        length = nondet_sync_check(machine, nd_check_length(config, machine))
        return ok(f"verified up to length {length}", verified_up_to=length)
    if isinstance(machine, InitialDetTransducer):
        machine = machine.base
    cert = sync_level(machine, bound(config, "max_k"))
    states = list(sink_component(machine).states)
    return ok(
        f"level={cert.level} core_states={format_states(states)}",
        level=cert.level, core_states=states,
    )


def cmd_core(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    T = load_det(args.file)
    return emit_machine(core(T, bound(config, "max_k")), args)


def cmd_image(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    T = load_det(args.file)
    if args.state not in T.states:
        raise FormatError(f"No state {args.state!r} in {args.file}", {"state": args.state})
    antichain = image_antichain(T, args.state, bound(config, "remainder"))
    cones = [format_word(w) for w in antichain.words]
    return ok(
        f"{len(cones)} cones: " + " | ".join(cones),
        state=args.state, cones=cones,
    )


def cmd_gen(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    return emit_machine(generator(args.n, args.d, args.e), args)


def cmd_dot(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    machine = load_machine(args.file)
    return ok(export_dot(machine, Path(args.file).stem).rstrip("\n"))
