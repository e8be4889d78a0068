"""Tests for marker pairs, conveyor-belt maps and lifts to the rooted space."""

import json
from pathlib import Path

import pytest

from dynamics.sequences import BiInfiniteSeq, apply, parse_sequence
from errors import (
    DomainError,
    FormatError,
    InvalidMarkerError,
    MembershipError,
    RadiusInsufficientError,
)
from markers.conveyor import (
    BOUNDARY_NOTE,
    ConveyorRule,
    ConveyorSystem,
    conveyor_automorphism,
    conveyor_direct,
    conveyor_from_dict,
    conveyor_sample,
    conveyor_to_dict,
    extract_rule,
    letterwise,
    load_conveyor,
    permutation_system,
    run_neighbourhoods,
    validate_conveyor,
)
from markers.lift import cylinder_bijective, lift_to_initial
from markers.marker import (
    MarkerPair,
    enumerate_marker_pairs,
    marker_automorphism,
    marker_direct,
    marker_sample,
    search_marker_pair,
    validate_marker_pair,
)


@pytest.fixture
def flip():
    """Swap u = 0,0 and u = 1,1 between copies of w = 0,1."""
    return permutation_system(2, (0, 1), [(0, 0), (1, 1)], [1, 0])


@pytest.fixture
def flip3():
    """Swap u = 2,2 and u = 2,0 between copies of w = 0,1 on three letters."""
    return permutation_system(3, (0, 1), [(2, 2), (2, 0)], [1, 0])


@pytest.fixture(scope="module")
def ternary_marker():
    """The marker map swapping 0,1 and 0,2."""
    return marker_automorphism(MarkerPair((0, 1), (0, 2)), 3)


class TestMarkerPairs:
    """Tests for validate_marker_pair and the search."""

    def test_valid_pairs(self):
        """Known good pairs pass."""
        assert validate_marker_pair((0, 1), (0, 2)) == (True, None)
        assert validate_marker_pair((0, 0, 1), (0, 1, 1)) == (True, None)

    def test_equal_words(self):
        """A word cannot be swapped with itself."""
        ok, witness = validate_marker_pair((0, 1), (0, 1))
        assert not ok
        assert "coincide" in witness

    def test_self_overlap(self):
        """0,0 occurs inside 0,0,0,0."""
        ok, witness = validate_marker_pair((0, 0), (0, 1))
        assert not ok
        assert witness.startswith("0,0 occurs")

    def test_short_words(self):
        """Marker words have length at least 2."""
        with pytest.raises(InvalidMarkerError):
            validate_marker_pair((0,), (1,))

    def test_search(self):
        """The first pairs in lexicographic order."""
        assert search_marker_pair(3, 2) == MarkerPair((0, 1), (0, 2))
        assert search_marker_pair(2, 3) == MarkerPair((0, 0, 1), (0, 1, 1))

    def test_binary_length_two_has_none(self):
        """No binary pair of length 2 works."""
        assert search_marker_pair(2, 2) is None
        assert enumerate_marker_pairs(2, 2) == []

    def test_limit(self):
        """The search stops at the limit."""
        assert len(enumerate_marker_pairs(3, 2, limit=2)) == 2

    def test_str(self):
        """Pairs print as (a | b)."""
        assert str(MarkerPair((0, 1), (0, 2))) == "(0,1 | 0,2)"


class TestMarkerDirect:
    """Tests for the direct marker map."""

    def test_middle_of_run_swaps(self):
        """Only words with two marker words on each side change."""
        pair = MarkerPair((0, 1), (0, 2))
        x = parse_sequence("(2)^-inf . 0,1,0,1,0,1,0,1,0,1 . (2)^inf @ 0", 3)
        expected = parse_sequence("(2)^-inf . 0,1,0,1,0,2,0,1,0,1 . (2)^inf @ 0", 3)
        assert marker_direct(pair, x) == expected

    def test_involution(self):
        """Applying the marker map twice changes nothing."""
        pair = MarkerPair((0, 1), (0, 2))
        x = parse_sequence("(2)^-inf . 0,1,0,2,0,1,0,1,0,2,0,2 . (2)^inf @ 3", 3)
        assert marker_direct(pair, marker_direct(pair, x)) == x

    def test_sample(self):
        """The sample has a-runs on the left and b-runs on the right."""
        sample = marker_sample(MarkerPair((0, 1), (0, 2)))
        assert sample.window(-4, 8) == (0, 1, 0, 1, 0, 2, 0, 2)


class TestMarkerAutomorphism:
    """Tests for the converted marker map."""

    def test_involution(self, ternary_marker):
        """The pair squares to the identity."""
        assert (ternary_marker * ternary_marker).is_identity

    def test_matches_direct(self, ternary_marker):
        """The converted pair agrees with the window rule."""
        pair = MarkerPair((0, 1), (0, 2))
        x = parse_sequence("(2)^-inf . 0,1,0,1,0,1,0,1,0,1 . (2)^inf @ 0", 3)
        assert apply(ternary_marker, x) == marker_direct(pair, x)

    def test_letters_checked(self):
        """Marker words must use the alphabet."""
        with pytest.raises(InvalidMarkerError):
            marker_automorphism(MarkerPair((0, 1), (0, 2)), 2)

    def test_membership_checked(self, monkeypatch):
        """A converted map outside D_n is refused where it is built."""
        monkeypatch.setattr("markers.marker.in_Dn", lambda T: False)
        with pytest.raises(MembershipError):
            marker_automorphism(MarkerPair((0, 1), (0, 2)), 3)


class TestConveyorSystem:
    """Tests for conveyor validation and the direct map."""

    def test_valid(self, flip):
        """The flip system is valid."""
        assert validate_conveyor(flip) == (True, None)
        assert flip.radius == 3

    def test_valid_ternary(self, flip3):
        """Blocks starting with 2 keep copies of w apart."""
        assert validate_conveyor(flip3) == (True, None)
        assert flip3.radius == 3

    def test_short_w(self):
        """w needs two letters."""
        system = permutation_system(2, (0,), [(1,)], [0])
        assert validate_conveyor(system)[0] is False

    def test_overlap(self):
        """w u w words must not overlap except through w."""
        system = permutation_system(2, (0, 0), [(1, 1)], [0])
        ok, witness = validate_conveyor(system)
        assert not ok
        assert "overlap" in witness

    def test_not_injective(self):
        """Two runs with one image are rejected."""
        system = ConveyorSystem(2, (0, 1), ((0, 0), (1, 1)), letterwise([0, 0]))
        ok, witness = validate_conveyor(system)
        assert not ok
        assert "same image" in witness

    def test_incomplete_table(self):
        """The rule needs every neighbourhood a run can show."""
        system = ConveyorSystem(2, (0, 1), ((0, 0), (1, 1)), ConveyorRule(1, {}))
        ok, witness = validate_conveyor(system)
        assert not ok
        assert "no entry" in witness

    def test_neighbourhoods(self):
        """None appears only past the ends of a run."""
        keys = run_neighbourhoods(2, 1)
        assert (None, 0, None) in keys
        assert (0, None, 1) not in keys
        assert len(keys) == 2 + 4 + 4 + 8

    def test_rewrite_with_boundary(self):
        """Run ends read as None."""
        rule = ConveyorRule(1, {
            key: (key[0] if key[0] is not None else key[1]) for key in run_neighbourhoods(2, 1)
        })
        assert rule.rewrite((1, 0, 0)) == (1, 1, 0)

    def test_direct_swaps_blocks(self, flip):
        """Each u in a run is replaced."""
        x = conveyor_sample(flip)
        expected = BiInfiniteSeq((0,), (0, 1, 1, 1, 0, 1, 0, 0, 0, 1), (0,), 0).normalize()
        assert conveyor_direct(flip, x) == expected


class TestConveyorRule:
    """Tests for rule extraction and conversion."""

    def test_extract_rule_radius(self, flip):
        """The rule window spans the system radius on both sides."""
        rule = extract_rule(flip)
        assert rule.m == 7
        assert rule.anticipation == 3

    def test_radius_too_small(self, flip):
        """A narrower window cannot see the closing w."""
        with pytest.raises(RadiusInsufficientError):
            extract_rule(flip, radius=2)

    def test_automorphism_matches_direct(self, flip):
        """The converted pair agrees with the direct map."""
        pair = conveyor_automorphism(flip)
        x = parse_sequence("(0)^-inf . 0,1,1,1,0,1,0,0,0,1,1,1,0,1 . (1)^inf @ 2", 2)
        assert apply(pair, x) == conveyor_direct(flip, x)

    def test_invalid_system(self):
        """Invalid systems are refused before conversion."""
        system = permutation_system(2, (0, 0), [(1, 1)], [0])
        with pytest.raises(InvalidMarkerError):
            conveyor_automorphism(system)


class TestConveyorFiles:
    """Tests for the JSON conveyor format."""

    def test_load_fixture(self, fixtures_dir):
        """The three-block fixture cycles its U-words."""
        system = load_conveyor(fixtures_dir / "conveyor_s3.json")
        assert system.U == ((0, 0), (1, 1), (1, 0))
        assert system.rule.rewrite((0, 1, 2)) == (1, 2, 0)
        assert validate_conveyor(system)[0]

    def test_load_spec(self, conveyor_spec):
        """A letterwise spec becomes a radius-0 rule."""
        system = load_conveyor(conveyor_spec)
        assert system.rule.delta == 0
        assert system.w == (0, 1)

    def test_missing_file(self, temp_dir):
        """Unreadable files are format errors."""
        with pytest.raises(FormatError):
            load_conveyor(Path(temp_dir) / "missing.json")

    def test_bad_json(self, temp_dir):
        """Broken JSON is a format error."""
        path = Path(temp_dir) / "bad.json"
        path.write_text("{not json")
        with pytest.raises(FormatError):
            load_conveyor(path)

    def test_missing_field(self):
        """n, w and U are required."""
        with pytest.raises(FormatError):
            conveyor_from_dict({"n": 2, "U": ["0,0"]})

    def test_local_form_with_default(self):
        """Unlisted neighbourhoods keep their centre."""
        system = conveyor_from_dict({
            "n": 2, "w": "0,1", "U": ["0,0", "1,1"], "form": "local", "delta": 1,
            "table": {"*,0,1": 1}, "default": "identity",
        })
        assert system.rule.rewrite((0, 1)) == (1, 1)
        assert system.rule.rewrite((1, 0)) == (1, 0)

    def test_unknown_form(self):
        """Only letterwise and local rules exist."""
        with pytest.raises(FormatError):
            conveyor_from_dict({"n": 2, "w": "0,1", "U": ["0,0"], "form": "other"})

    def test_to_dict_notes_boundary(self, flip, temp_dir):
        """Exported tables carry the boundary note and reload."""
        data = conveyor_to_dict(flip)
        assert data["note"] == BOUNDARY_NOTE
        assert data["table"] == {"0": 1, "1": 0}
        path = Path(temp_dir) / "flip.json"
        path.write_text(json.dumps(data))
        assert load_conveyor(path).rule.rewrite((0, 1)) == (1, 0)


class TestLift:
    """Tests for lifting D_n elements."""

    def test_permutation_lift(self, swap3):
        """A letter permutation lifts to a one-state initial machine."""
        lifted = lift_to_initial(swap3)
        assert len(lifted.machine.base.states) == 1
        assert lifted.run(0, (0, 1, 2)) == (0, (1, 0, 2))

    def test_lift_is_homomorphic(self, swap3):
        """The lift of swap3 squares to the identity."""
        lifted = lift_to_initial(swap3)
        assert (lifted * lifted).is_identity

    def test_cylinders(self, cond3):
        """Depth-2 cylinders map bijectively for each root."""
        assert cylinder_bijective(lift_to_initial(cond3, r=2), 2)

    def test_outside_Dn(self, inclusion):
        """Only D_n elements lift."""
        with pytest.raises(MembershipError):
            lift_to_initial(inclusion)

    def test_r_range(self, swap3):
        """r must lie in [1, n - 1]."""
        with pytest.raises(DomainError):
            lift_to_initial(swap3, r=0)

    @pytest.mark.parametrize("r", [1, 2])
    def test_marker_lift_cylinders(self, ternary_marker, r):
        """The marker map lifts to a bijection on depth-4 cylinders."""
        lifted = lift_to_initial(ternary_marker.machine, r)
        assert lifted.root_count == r
        assert cylinder_bijective(lifted, 4)

    def test_conveyor_lift_cylinders(self, flip):
        """The binary flip lifts for its only root count."""
        machine = conveyor_automorphism(flip).machine
        assert cylinder_bijective(lift_to_initial(machine, 1), 4)
        with pytest.raises(DomainError):
            lift_to_initial(machine, 2)

    @pytest.mark.parametrize("r", [1, 2])
    def test_ternary_conveyor_lift_cylinders(self, flip3, r):
        """The ternary flip lifts for both root counts."""
        machine = conveyor_automorphism(flip3).machine
        assert cylinder_bijective(lift_to_initial(machine, r), 4)
