"""Handlers for the reverse-arrows construction."""

import argparse
from typing import Any

from machines.base import NondetTransducer, as_nondet
from machines.reverse import probe_q1, rec, rev, rev_automorphism, rev_sig
from machines.textformat import load_machine

from .base import CommandResult, bound, load_det, ok, require_det
from .transducer import emit_machine


def cmd_rev(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    return emit_machine(rev(load_det(args.file)), args)


def cmd_rec(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    machine = load_machine(args.file)
    if not isinstance(machine, NondetTransducer):
        machine = as_nondet(require_det(machine, args.file))
    return emit_machine(rec(machine, bound(config, "remainder")), args)


def cmd_revaut(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    return emit_machine(rev_automorphism(load_det(args.file)), args)


def cmd_revsig(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    value = rev_sig(load_det(args.file), bound(config, "remainder"))
    return ok(f"rev_sig = {value}", residue=value.residue, modulus=value.modulus)


def cmd_probe_q1(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    result = probe_q1(load_det(args.file))
    agree = "true" if result.agree else "false"
    return ok(
        f"rev_sig = {result.rev_sig}, sig(inverse) = {result.inverse_sig}, agree={agree}",
        rev_sig=result.rev_sig.residue,
        inverse_sig=result.inverse_sig.residue,
        modulus=result.rev_sig.modulus,
        agree=result.agree,
    )
