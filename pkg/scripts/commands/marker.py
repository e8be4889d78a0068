"""Handlers for marker, conveyor and lift constructions."""

import argparse
from typing import Any

from markers.conveyor import BOUNDARY_NOTE, conveyor_automorphism, load_conveyor
from markers.lift import cylinder_bijective, lift_to_initial
from markers.marker import MarkerPair, enumerate_marker_pairs, marker_automorphism
from words import parse_word

from .base import CommandResult, load_det, ok
from .transducer import emit_machine


def cmd_marker(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    pair = MarkerPair(parse_word(args.a, args.n), parse_word(args.b, args.n))
    result = marker_automorphism(pair, args.n)
    return emit_machine(result.machine, args, annotation=dict(result.annotation))


def cmd_marker_search(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    found = enumerate_marker_pairs(args.n, args.l, limit=args.count)
    if not found:
        return ok("none", pairs=[])
    return ok("\n".join(str(p) for p in found), pairs=[str(p) for p in found])


def cmd_conveyor(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    system = load_conveyor(args.spec)
    result = conveyor_automorphism(
        system, k_check=args.k_check, check_membership=not args.no_membership
    )
    emitted = emit_machine(
        result.machine, args, annotation=dict(result.annotation), note=BOUNDARY_NOTE
    )
    if not getattr(args, "output", None):
        emitted.message = f"# {BOUNDARY_NOTE}\n{emitted.message}"
    return emitted


def cmd_lift(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    lifted = lift_to_initial(load_det(args.file), args.r)
    details: dict[str, Any] = {"root_count": lifted.root_count}
    if args.check_depth is not None:
        details["bijective"] = cylinder_bijective(lifted, args.check_depth)
        details["check_depth"] = args.check_depth
    emitted = emit_machine(lifted.machine, args, **details)
    if args.check_depth is not None:
        verdict = "true" if details["bijective"] else "false"
        emitted.message += f"\n# bijective on depth-{args.check_depth} cylinders: {verdict}"
        emitted.exit_code = 0 if details["bijective"] else 1
    return emitted
