"""Command handlers for the synctrans command line."""

import argparse
from typing import Any

from errors import SynctransError
from utils.logger import get_logger

from .base import CommandResult
from .dynamics import cmd_apply, cmd_pi
from .marker import cmd_conveyor, cmd_lift, cmd_marker, cmd_marker_search
from .reverse import cmd_probe_q1, cmd_rec, cmd_rev, cmd_revaut, cmd_revsig
from .signature import cmd_extend, cmd_member, cmd_sig, cmd_sigk, cmd_sigw
from .suite import cmd_suite
from .transducer import (
    cmd_core,
    cmd_dot,
    cmd_gen,
    cmd_image,
    cmd_invert,
    cmd_minimize,
    cmd_product,
    cmd_sync,
    cmd_validate,
)

# Map verbs to handler functions
COMMANDS = {
    "validate": cmd_validate,
    "minimize": cmd_minimize,
    "product": cmd_product,
    "invert": cmd_invert,
    "sync": cmd_sync,
    "core": cmd_core,
    "image": cmd_image,
    "sig": cmd_sig,
    "sigw": cmd_sigw,
    "sigk": cmd_sigk,
    "extend": cmd_extend,
    "member": cmd_member,
    "gen": cmd_gen,
    "rev": cmd_rev,
    "rec": cmd_rec,
    "revaut": cmd_revaut,
    "revsig": cmd_revsig,
    "probe-q1": cmd_probe_q1,
    "apply": cmd_apply,
    "pi": cmd_pi,
    "marker": cmd_marker,
    "marker-search": cmd_marker_search,
    "conveyor": cmd_conveyor,
    "lift": cmd_lift,
    "suite": cmd_suite,
    "dot": cmd_dot,
}


def run_command(verb: str, args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    """
    Run one verb and turn library errors into exit codes.

    Args:
        verb: Command name (e.g., "sig", "minimize")
        args: Parsed command-line arguments for the verb
        config: Loaded configuration with CLI overrides applied

    Returns:
        CommandResult with exit code 0, 1 (domain error) or 2 (format error)
    """
    handler = COMMANDS.get(verb)

    if handler is None:
        return CommandResult(2, f"Unknown command: {verb}", {"verb": verb})

    try:
        return handler(args, config)
    except SynctransError as e:
        return CommandResult(e.exit_code, e.message, {"error": type(e).__name__, **e.details})
    except Exception as e:
        get_logger().error(f"{verb}: {type(e).__name__}: {e}")
        return CommandResult(
            1,
            f"internal error: {e}",
            {"error": type(e).__name__, "verb": verb},
        )


__all__ = [
    'COMMANDS',
    'CommandResult',
    'run_command',
]
