"""Handler for the acceptance suite."""

import argparse
from typing import Any

from acceptance import CHECKS, SuiteContext, run_checks
from errors import FormatError

from .base import CommandResult


def cmd_suite(args: argparse.Namespace, config: dict[str, Any]) -> CommandResult:
    names = args.check or None
    unknown = [name for name in names or [] if name not in CHECKS]
    if unknown:
        raise FormatError(f"Unknown checks: {', '.join(unknown)}", {"known": list(CHECKS)})
    ctx = SuiteContext.from_config(config, seed=args.seed)
    outcomes = run_checks(ctx, names)
    lines = [
        f"{'PASS' if o.passed else 'FAIL'} {o.name}: {o.detail}" for o in outcomes
    ]
    failed = [o.name for o in outcomes if not o.passed]
    lines.append(f"{len(outcomes) - len(failed)}/{len(outcomes)} checks passed")
    return CommandResult(
        1 if failed else 0,
        "\n".join(lines),
        {
            "seed": ctx.seed,
            "checks": {o.name: {"passed": o.passed, "detail": o.detail} for o in outcomes},
        },
    )
