"""Tests for machines/textformat.py"""

from pathlib import Path

import pytest

from errors import FormatError
from machines.base import InitialDetTransducer, NondetTransducer, ZxTransducer
from machines.library import identity
from machines.reverse import rev
from machines.textformat import (
    export_dot,
    load_annotated,
    load_machine,
    parse,
    parse_annotation,
    save_machine,
    serialize,
)


def dot_counts(source: str) -> tuple[int, int]:
    """
    Count node and edge statements in DOT source.

    Args:
        source: Output of export_dot

    Returns:
        (nodes, edges)
    """
    statements = [line.strip() for line in source.splitlines()[1:-1]]
    edges = sum(1 for s in statements if "->" in s)
    return len(statements) - edges, edges


class TestParse:
    """Tests for parse."""

    def test_fixture(self, fixtures_dir, inclusion):
        """The inclusion fixture parses to the library machine."""
        assert load_machine(fixtures_dir / "inclusion.fst") == inclusion

    def test_shift_fixture(self, fixtures_dir, shift2):
        """shift2.fst is Sigma_2."""
        assert load_machine(fixtures_dir / "shift2.fst") == shift2

    def test_initial(self):
        """An initial line gives an initial machine."""
        text = "alphabet 2\nstates a\ninitial a\nedge a 0 a 0\nedge a 1 a 1\n"
        machine = parse(text)
        assert isinstance(machine, InitialDetTransducer)
        assert machine.initial == "a"

    def test_nondeterministic(self):
        """ndedge lines may read words."""
        text = "alphabet 2\nstates a\nndedge a 0,1 a 1\nndedge a 1 a 0,0\n"
        machine = parse(text)
        assert isinstance(machine, NondetTransducer)
        assert machine.max_input_length == 2

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are skipped."""
        text = "# header\n\nalphabet 2  # binary\nstates a\nedge a 0 a 0\nedge a 1 a 1\n"
        assert parse(text) == identity(2, name="a")

    @pytest.mark.parametrize("text,message", [
        ("states a\nedge a 0 a 0\n", "edges must follow"),
        ("alphabet two\nstates a\n", "alphabet <n>"),
        ("alphabet 2\nstates a\nedge a 0,1 a 0\nedge a 1 a 1\n", "exactly one letter"),
        ("alphabet 2\nstates a\nedge a 0 a 0\nedge a 0 a 1\n", "second edge"),
        ("alphabet 2\nstates a\nfoo a\n", "unknown directive"),
        ("alphabet 2\nstates a\nannotation a x\n", "annotation <state> <int>"),
    ])
    def test_errors(self, text, message):
        """Malformed files raise FormatError naming the problem."""
        with pytest.raises(FormatError, match=message):
            parse(text)

    def test_error_reports_line(self):
        """Line numbers are reported in details."""
        with pytest.raises(FormatError) as exc:
            parse("alphabet 2\nstates a\nbogus\n")
        assert exc.value.details["line"] == 3

    def test_mixed_edges(self):
        """edge and ndedge lines cannot mix."""
        text = "alphabet 2\nstates a\nedge a 0 a 0\nedge a 1 a 1\nndedge a 0 a 0\n"
        with pytest.raises(FormatError, match="mixes"):
            parse(text)

    def test_missing_header(self):
        """alphabet and states are required."""
        with pytest.raises(FormatError):
            parse("")

    def test_letter_out_of_range(self):
        """Letters must lie in the alphabet."""
        with pytest.raises(FormatError):
            parse("alphabet 2\nstates a\nedge a 0 a 2\nedge a 1 a 1\n")

    def test_missing_file(self, temp_dir):
        """Unreadable files raise FormatError."""
        with pytest.raises(FormatError, match="Cannot read"):
            load_machine(Path(temp_dir) / "nope.fst")


class TestSerialize:
    """Tests for serialize and the annotation lines."""

    def test_reparse(self, inclusion, cond3):
        """Serialized machines parse back."""
        assert parse(serialize(inclusion)) == inclusion
        assert parse(serialize(cond3)) == cond3

    def test_empty_output_written_as_dash(self, inclusion):
        """Empty words print as '-'."""
        assert "edge a1 1 a2 -" in serialize(inclusion)

    def test_nondet(self, shift2):
        """Reversed machines serialize with ndedge lines."""
        text = serialize(rev(shift2))
        assert "ndedge" in text
        assert parse(text) == rev(shift2)

    def test_zx(self):
        """Z_x machines serialize as their one-state form."""
        text = serialize(ZxTransducer(2, (0, 1)))
        assert "edge z 0 z 0,1" in text

    def test_annotation_lines(self, shift2, temp_dir):
        """Annotations are written and read back."""
        path = Path(temp_dir) / "s.fst"
        save_machine(shift2, path, {"a1": 0, "a2": -1})
        machine, annotation = load_annotated(path)
        assert machine == shift2
        assert annotation == {"a1": 0, "a2": -1}

    def test_no_annotation(self, fixtures_dir):
        """Files without annotation lines give None."""
        text = (fixtures_dir / "shift2.fst").read_text()
        assert parse_annotation(text) is None


class TestExportDot:
    """Tests for export_dot."""

    def test_identity(self):
        """The identity has one node and a loop per letter."""
        assert dot_counts(export_dot(identity(3))) == (1, 3)

    def test_inclusion(self, inclusion):
        """Six states and twelve edges."""
        source = export_dot(inclusion, name="inclusion")
        assert source.startswith("digraph inclusion {")
        assert dot_counts(source) == (6, 12)

    def test_labels(self, shift2):
        """Edges are labelled input|output."""
        assert 'label="1|0"' in export_dot(shift2)

    def test_initial_state_marked(self):
        """The initial state is drawn with a double circle."""
        machine = InitialDetTransducer(identity(2), "a1")
        assert "doublecircle" in export_dot(machine)
