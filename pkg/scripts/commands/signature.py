"""Handlers for signatures and group membership."""

import argparse
from typing import Any

from errors import DomainError
from machines.signatures import (
    block_extension,
    dn_witness,
    in_Hn,
    in_Kn,
    in_Ln,
    in_On,
    in_Onr,
    sig,
    sig_k,
    sig_omega,
)

from .base import CommandResult, bound, load_det, load_pair, ok
from .transducer import emit_machine

GROUPS = ("On", "Onr", "Ln", "Kn", "Dn", "Hn")


def cmd_sig(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    value = sig(load_det(args.file), bound(config, "remainder"))
    return ok(f"sig = {value}", residue=value.residue, modulus=value.modulus)


def cmd_sigw(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    value = sig_omega(load_det(args.file), bound(config, "remainder"))
    return ok(
        f"sig_omega = {value}",
        primes=list(value.primes), exponents=list(value.exponents), order=value.order(),
    )


def cmd_sigk(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    pair = load_pair(args)
    value = sig_k(pair.machine, pair.annotation, args.k, bound(config, "remainder"))
    modulus = pair.n ** args.k - 1
    return ok(f"sig_{args.k} = {value} (mod {modulus})", value=value, modulus=modulus)


def cmd_extend(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    pair = load_pair(args)
    machine, annotation = block_extension(pair.machine, pair.annotation, args.k)
    return emit_machine(machine, args, annotation=annotation)


def _dn_membership(T) -> tuple[bool, str | None, str | None]:
    if not in_Kn(T):
        return False, None, "not in K_n"
    witness = dn_witness(T)
    if witness is not None:
        return False, witness, None
    return True, None, None


def cmd_member(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    T = load_det(args.file)
    group = args.group
    if group == "Onr" and not 1 <= args.r <= T.n - 1:
        raise DomainError(f"--r must lie in [1, {T.n - 1}], got {args.r}", {"r": args.r})
    witness = reason = None
    try:
        if group == "Dn":
            member, witness, reason = _dn_membership(T)
        elif group == "Onr":
            member = in_Onr(T, args.r)
        else:
            member = {"On": in_On, "Ln": in_Ln, "Kn": in_Kn, "Hn": in_Hn}[group](T)
    except DomainError as e:
        member, reason = False, e.message
    if member:
        text = "true"
    elif witness is not None:
        text = f"false (witness state {witness})"
    elif reason is not None:
        text = f"false ({reason})"
    else:
        text = "false"
    return ok(text, group=group, member=member, witness=witness)
