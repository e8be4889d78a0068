"""Conveyor-belt maps: rewriting the U-letters of maximal runs w u1 w u2 ... w uk w."""

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product as cartesian
from pathlib import Path

from dynamics.annotations import AnnotatedTransducer
from dynamics.local_rules import LocalRule, calibrate, local_rule_to_transducer
from dynamics.sequences import BiInfiniteSeq, apply_block_map
from errors import FormatError, InvalidMarkerError, MembershipError, RadiusInsufficientError
from machines.signatures import in_Dn
from utils.logger import get_logger
from words import Word, format_word, parse_word, words_of_length

logger = get_logger()

Neighbourhood = tuple[int | None, ...]

BOUNDARY_NOTE = "run ends read as '*' (None) in the boundary columns of the rule table"


@dataclass(frozen=True)
class ConveyorRule:
    """
    Radius-delta rule on U-indices.

    Keys list the U-indices of slots i-delta .. i+delta of a run; slots
    beyond either end of the run are None.
    """
    delta: int
    table: Mapping[Neighbourhood, int] = field(hash=False)

    def rewrite(self, run: Sequence[int]) -> tuple[int, ...]:
        """Image of the U-letters of one run."""
        k = len(run)
        result = []
        for i in range(k):
            key = tuple(
                run[i + d] if 0 <= i + d < k else None for d in range(-self.delta, self.delta + 1)
            )
            result.append(self.table[key])
        return tuple(result)


def letterwise(sigma: Sequence[int]) -> ConveyorRule:
    return ConveyorRule(0, {(i,): target for i, target in enumerate(sigma)})


def run_neighbourhoods(size: int, delta: int) -> list[Neighbourhood]:
    """Neighbourhoods that occur in some run: None only as an outer prefix or suffix."""
    keys = []
    for left in range(delta + 1):
        for right in range(delta + 1):
            for core in cartesian(range(size), repeat=left + right + 1):
                keys.append(
                    (None,) * (delta - left) + tuple(core) + (None,) * (delta - right)
                )
    return keys


@dataclass(frozen=True)
class ConveyorSystem:
    n: int
    w: Word
    U: tuple[Word, ...]
    rule: ConveyorRule

    @property
    def block(self) -> int:
        return len(self.U[0])

    @property
    def period(self) -> int:
        return len(self.w) + self.block

    @property
    def radius(self) -> int:
        """Letters each side that determine an output letter."""
        return (self.rule.delta + 1) * self.period - 1

    def word(self, u_index: int) -> Word:
        return self.w + self.U[u_index] + self.w

    def encode(self, run: Sequence[int]) -> Word:
        """w u_(i1) w u_(i2) ... w."""
        out: list[int] = list(self.w)
        for i in run:
            out += list(self.U[i]) + list(self.w)
        return tuple(out)


def _overlap_witness(system: ConveyorSystem) -> str | None:
    words = [system.word(i) for i in range(len(system.U))]
    keep = len(system.w)
    for a in words:
        for b in words:
            for size in range(1, len(a)):
                if size != keep and a[-size:] == b[:size]:
                    return f"{format_word(a)} and {format_word(b)} overlap in {size} letters"
    return None


def validate_conveyor(system: ConveyorSystem, k_check: int = 4) -> tuple[bool, str | None]:
    """Overlap condition, a total rule, and injectivity on runs of up to k_check U-letters."""
    if len(system.w) < 2:
        return False, "w must have length at least 2"
    if not system.U or len({len(u) for u in system.U}) != 1 or system.block < 1:
        return False, "U must be non-empty words of one length"
    if len(set(system.U)) != len(system.U):
        return False, "U has repeated words"
    witness = _overlap_witness(system)
    if witness:
        return False, witness
    size = len(system.U)
    missing = [
        k for k in run_neighbourhoods(size, system.rule.delta) if k not in system.rule.table
    ]
    if missing:
        return False, f"rule table has no entry for {missing[0]}"
    if any(not 0 <= v < size for v in system.rule.table.values()):
        return False, "rule table writes an index outside U"
    for k in range(1, k_check + 1):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for run in cartesian(range(size), repeat=k):
            image = system.rule.rewrite(run)
            if image in seen:
                return False, (
                    f"runs {format_word(seen[image])} and {format_word(run)} "
                    f"have the same image {format_word(image)}"
                )
            seen[image] = run
    return True, None


def conveyor_window(system: ConveyorSystem):
    """Letter rule on windows of the system's radius around position j."""
    w, U, delta = system.w, system.U, system.rule.delta
    period, span, centre = system.period, system.period + len(w), system.radius
    index = {u: i for i, u in enumerate(U)}

    def slot(block: Word, s: int) -> int | None:
        if s < 0 or s + span > len(block):
            return None
        if block[s:s + len(w)] != w or block[s + period:s + span] != w:
            return None
        return index.get(block[s + len(w):s + period])

    def rule(block: Word) -> int:
        for t in range(system.block):
            s = centre - len(w) - t
            here = slot(block, s)
            if here is None:
                continue
            key: list[int | None] = [None] * (2 * delta + 1)
            key[delta] = here
            for sign in (-1, 1):
                for d in range(1, delta + 1):
                    value = slot(block, s + sign * d * period)
                    if value is None:
                        break
                    key[delta + sign * d] = value
            return U[system.rule.table[tuple(key)]][t]
        return block[centre]

    return rule


def conveyor_direct(system: ConveyorSystem, x: BiInfiniteSeq) -> BiInfiniteSeq:
    r = system.radius
    return apply_block_map(conveyor_window(system), r, r, x)


def extract_rule(system: ConveyorSystem, radius: int | None = None) -> LocalRule:
    """
    Tabulate the window rule at `radius`.

    Windows narrower than the system's radius are padded with 0. Every entry
    must survive one more letter of context on each side.
    """
    need = system.radius
    radius = need if radius is None else radius
    window = conveyor_window(system)

    def evaluate(block: Word) -> int:
        half = len(block) // 2
        if half >= need:
            return window(block[half - need:half + need + 1])
        pad = (0,) * (need - half)
        return window(pad + block + pad)

    n, m = system.n, 2 * radius + 1
    rule = LocalRule(n, m, tuple(evaluate(block) for block in words_of_length(n, m)), radius)
    for block in words_of_length(n, m):
        expected = rule(block)
        for a in range(n):
            for b in range(n):
                wider = (a,) + block + (b,)
                if evaluate(wider) != expected:
                    raise RadiusInsufficientError(
                        f"radius {radius} does not determine the output letter",
                        {"window": format_word(block), "extended": format_word(wider)},
                    )
    return rule


def conveyor_sample(system: ConveyorSystem) -> BiInfiniteSeq:
    """One run through every U-letter, between constant tails."""
    run = system.encode(range(len(system.U)))
    filler = (system.w[0],)
    return BiInfiniteSeq(filler, run, filler, 0).normalize()


def conveyor_automorphism(system: ConveyorSystem, k_check: int = 4,
                          check_membership: bool = True) -> AnnotatedTransducer:
    ok, witness = validate_conveyor(system, k_check)
    if not ok:
        raise InvalidMarkerError(f"Invalid conveyor system: {witness}", {"witness": witness})
    rule = extract_rule(system)
    pair = calibrate(
        local_rule_to_transducer(rule),
        lambda x: conveyor_direct(system, x),
        conveyor_sample(system),
        rule.m,
    )
    logger.debug(f"conveyor_automorphism: {len(pair.machine.states)} states")
    if check_membership and not in_Dn(pair.machine):
        raise MembershipError("Conveyor map landed outside D_n")
    return pair


def _parse_key(text: str) -> Neighbourhood:
    key = []
    for part in text.split(","):
        part = part.strip()
        if part == "*":
            key.append(None)
            continue
        try:
            key.append(int(part))
        except ValueError as e:
            raise FormatError(f"Bad rule key {text!r}") from e
    return tuple(key)


def load_conveyor(path: str | Path) -> ConveyorSystem:
    """
    Read a JSON conveyor description.

    {"n": 2, "w": "0,1", "U": ["0,0", "1,1"], "form": "letterwise", "permutation": [1, 0]}
    {"n": 2, "w": "0,1", "U": [...], "form": "local", "delta": 1,
     "table": {"*,0,1": 1, ...}, "default": "identity"}
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError(f"Cannot read conveyor file {path}: {e}", {"path": str(path)}) from e
    return conveyor_from_dict(data)


def conveyor_from_dict(data: Mapping) -> ConveyorSystem:
    try:
        n = int(data["n"])
        w = parse_word(data["w"], n)
        U = tuple(parse_word(u, n) for u in data["U"])
        form = data.get("form", "letterwise")
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"Conveyor description is missing or has a bad field: {e}") from e
    if form == "letterwise":
        sigma = data.get("permutation", list(range(len(U))))
        return ConveyorSystem(n, w, U, letterwise([int(v) for v in sigma]))
    if form != "local":
        raise FormatError(f"Unknown conveyor rule form {form!r}")
    delta = int(data.get("delta", 0))
    table = {_parse_key(k): int(v) for k, v in data.get("table", {}).items()}
    if any(len(key) != 2 * delta + 1 for key in table):
        raise FormatError(f"Rule keys must list {2 * delta + 1} slots")
    if data.get("default") == "identity":
        for key in run_neighbourhoods(len(U), delta):
            table.setdefault(key, key[delta])
    return ConveyorSystem(n, w, U, ConveyorRule(delta, table))


def conveyor_to_dict(system: ConveyorSystem) -> dict:
    def key_text(key: Neighbourhood) -> str:
        return ",".join("*" if v is None else str(v) for v in key)

    return {
        "n": system.n,
        "w": format_word(system.w),
        "U": [format_word(u) for u in system.U],
        "form": "local",
        "delta": system.rule.delta,
        "table": {key_text(k): v for k, v in sorted(
            system.rule.table.items(), key=lambda item: key_text(item[0])
        )},
        "note": BOUNDARY_NOTE,
    }


def permutation_system(n: int, w: Word, U: Sequence[Word], sigma: Sequence[int]) -> ConveyorSystem:
    return ConveyorSystem(n, w, tuple(U), letterwise(sigma))
