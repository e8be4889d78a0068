"""Handlers for the action on sequences and on rotation classes."""

import argparse
from typing import Any

from dynamics.pi_action import moved_classes, pi_action
from dynamics.sequences import apply, parse_sequence
from errors import MembershipError
from machines.base import ZxTransducer
from machines.core import minimize
from words import format_word

from .base import CommandResult, bound, load_det, load_pair, ok


def cmd_apply(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    pair = load_pair(args)
    x = parse_sequence(args.seq, pair.n)
    y = x
    for _ in range(args.times):
        y = apply(pair, y)
    return ok(str(y), input=str(x), output=str(y))


def cmd_pi(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    M = minimize(load_det(args.file), bound(config, "depth"))
    if isinstance(M, ZxTransducer):
        raise MembershipError("Z_x machines do not act on rotation classes")
    action = pi_action(M, args.maxlen)
    shown = moved_classes(action) if args.moved else action
    lines = [f"[{format_word(g)}] -> [{format_word(h)}]" for g, h in shown.items()]
    return ok(
        "\n".join(lines) if lines else "no classes moved",
        action={format_word(g): format_word(h) for g, h in shown.items()},
    )
