"""Plain-text machine files and DOT export."""

from collections.abc import Mapping
from pathlib import Path

import graphviz

from errors import FormatError
from words import format_word, parse_word

from .base import DetTransducer, InitialDetTransducer, NondetEdge, NondetTransducer, ZxTransducer

Machine = DetTransducer | InitialDetTransducer | NondetTransducer


def _fail(lineno: int, message: str) -> FormatError:
    return FormatError(f"line {lineno}: {message}", {"line": lineno})


def parse(text: str) -> Machine:
    """
    Parse the line format.

    alphabet <n>
    states <id> <id> ...
    initial <id>                      (optional)
    annotation <id> <int>             (optional, read by parse_annotation)
    edge <src> <letter> <dst> <out>   (deterministic)
    ndedge <src> <in> <dst> <out>     (word inputs allowed)

    Words are comma-separated letters, "-" for the empty word. Mixing edge
    and ndedge lines is an error.
    """
    n = None
    states: tuple[str, ...] | None = None
    initial = None
    det_edges: list[tuple[int, str, int, str, tuple]] = []
    nd_edges: list[NondetEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "alphabet":
            if len(rest) != 1 or not rest[0].isdigit():
                raise _fail(lineno, "expected 'alphabet <n>'")
            n = int(rest[0])
        elif head == "states":
            if not rest:
                raise _fail(lineno, "no states listed")
            states = tuple(rest)
        elif head == "initial":
            if len(rest) != 1:
                raise _fail(lineno, "expected 'initial <state>'")
            initial = rest[0]
        elif head == "annotation":
            if len(rest) != 2 or not rest[1].lstrip("-").isdigit():
                raise _fail(lineno, "expected 'annotation <state> <int>'")
        elif head in ("edge", "ndedge"):
            if n is None or states is None:
                raise _fail(lineno, "edges must follow the alphabet and states lines")
            if len(rest) != 4:
                raise _fail(lineno, f"expected '{head} <src> <in> <dst> <out>'")
            src, word_in, dst, word_out = rest
            read = parse_word(word_in, n)
            written = parse_word(word_out, n)
            if head == "edge":
                if len(read) != 1:
                    raise _fail(lineno, "deterministic edges read exactly one letter")
                det_edges.append((lineno, src, read[0], dst, written))
            else:
                nd_edges.append(NondetEdge(read, src, dst, written))
        else:
            raise _fail(lineno, f"unknown directive {head!r}")
    if n is None or states is None:
        raise FormatError("machine file needs 'alphabet' and 'states' lines")
    if det_edges and nd_edges:
        raise FormatError("file mixes 'edge' and 'ndedge' lines")
    if nd_edges:
        return NondetTransducer(n, states, tuple(nd_edges))
    transition = {}
    output = {}
    for lineno, src, x, dst, written in det_edges:
        if (x, src) in transition:
            raise _fail(lineno, f"second edge for letter {x} at state {src}")
        transition[(x, src)] = dst
        output[(x, src)] = written
    machine = DetTransducer(n, states, transition, output)
    if initial is not None:
        return InitialDetTransducer(machine, initial)
    return machine


def serialize(machine: Machine | ZxTransducer,
              annotation: Mapping[str, int] | None = None) -> str:
    if isinstance(machine, ZxTransducer):
        machine = machine.as_det()
    lines = []
    if isinstance(machine, NondetTransducer):
        lines += [f"alphabet {machine.n}", "states " + " ".join(machine.states)]
        for e in machine.edges:
            lines.append(
                f"ndedge {e.source} {format_word(e.input)} {e.target} {format_word(e.output)}"
            )
        return "\n".join(lines) + "\n"
    base = machine.base if isinstance(machine, InitialDetTransducer) else machine
    lines += [f"alphabet {base.n}", "states " + " ".join(base.states)]
    if isinstance(machine, InitialDetTransducer):
        lines.append(f"initial {machine.initial}")
    for q, value in (annotation or {}).items():
        lines.append(f"annotation {q} {value}")
    for q in base.states:
        for x in base.letters:
            lines.append(f"edge {q} {x} {base.pi(x, q)} {format_word(base.lam(x, q))}")
    return "\n".join(lines) + "\n"


def parse_annotation(text: str) -> dict[str, int] | None:
    """Values from 'annotation' lines, or None when the file has none."""
    found = {}
    for raw in text.splitlines():
        parts = raw.split("#", 1)[0].split()
        if len(parts) == 3 and parts[0] == "annotation":
            found[parts[1]] = int(parts[2])
    return found or None


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise FormatError(f"Cannot read machine file {path}: {e}", {"path": str(path)}) from e


def load_machine(path: str | Path) -> Machine:
    return parse(_read(Path(path)))


def load_annotated(path: str | Path) -> tuple[Machine, dict[str, int] | None]:
    text = _read(Path(path))
    return parse(text), parse_annotation(text)


def save_machine(machine: Machine | ZxTransducer, path: str | Path,
                 annotation: Mapping[str, int] | None = None) -> None:
    Path(path).write_text(serialize(machine, annotation))


def export_dot(machine: Machine | ZxTransducer, name: str = "T") -> str:
    """DOT source with one node per state and edges labelled in|out."""
    if isinstance(machine, ZxTransducer):
        machine = machine.as_det()
    dot = graphviz.Digraph(name=name)
    if isinstance(machine, NondetTransducer):
        for q in machine.states:
            dot.node(q)
        for e in machine.edges:
            dot.edge(e.source, e.target, label=f"{format_word(e.input)}|{format_word(e.output)}")
        return dot.source
    base = machine.base if isinstance(machine, InitialDetTransducer) else machine
    for q in base.states:
        if isinstance(machine, InitialDetTransducer) and q == machine.initial:
            dot.node(q, shape="doublecircle")
        else:
            dot.node(q)
    for q in base.states:
        for x in base.letters:
            dot.edge(q, base.pi(x, q), label=f"{x}|{format_word(base.lam(x, q))}")
    return dot.source
