"""Tests for sequences, annotated pairs, local rules and the rotation-class action."""

import pytest

from dynamics.annotations import (
    AnnotatedTransducer,
    canonical_annotation,
    canonical_pair,
    identity_pair,
    product_annotation,
    same_pair,
    shift_pair,
)
from dynamics.local_rules import (
    LocalRule,
    calibrate,
    is_left_permutive,
    is_right_permutive,
    local_rule_to_transducer,
)
from dynamics.pi_action import (
    class_image,
    follow,
    moved_classes,
    permutes_each_length,
    pi_action,
    reverse_class,
)
from dynamics.sequences import BiInfiniteSeq, apply, parse_sequence, periodic
from errors import DegenerateError, DomainError, FormatError, MembershipError, WordError
from machines.base import DetTransducer
from machines.library import identity

SPIKE = "(0)^-inf . 1 . (0)^inf @ 0"


@pytest.fixture
def spike():
    """All zeros except a 1 at index 0."""
    return parse_sequence(SPIKE, 2)


@pytest.fixture
def xor_rule():
    """y_i = x_(i-1) + x_i mod 2."""
    return LocalRule(2, 2, (0, 1, 1, 0))


class TestBiInfiniteSeq:
    """Tests for sequence literals and normalization."""

    def test_parse_and_letters(self, spike):
        """The center starts at the offset."""
        assert spike.letter(0) == 1
        assert spike.letter(-3) == 0
        assert spike.letter(7) == 0
        assert spike.window(-1, 3) == (0, 1, 0)

    def test_str(self, spike):
        """Normalized literals print back unchanged."""
        assert str(spike) == SPIKE

    def test_bad_literal(self):
        """Malformed literals are format errors."""
        with pytest.raises(FormatError):
            parse_sequence("0,1,0")

    def test_letter_out_of_range(self):
        """Letters are checked against n."""
        with pytest.raises(FormatError):
            parse_sequence("(0)^-inf . 2 . (0)^inf @ 0", 2)

    def test_empty_tail_rejected(self):
        """Periodic tails cannot be empty."""
        with pytest.raises(WordError):
            BiInfiniteSeq((), (), (0,), 0)

    def test_center_absorbed_into_tails(self):
        """Center letters that continue a tail move into it."""
        x = BiInfiniteSeq((0,), (0, 1), (1,), 0).normalize()
        assert x == BiInfiniteSeq((0,), (), (1,), 1)

    def test_tails_use_prime_roots(self):
        """A tail (0,1,0,1) is the same as (0,1)."""
        x = parse_sequence("(0,1,0,1)^-inf . - . (1)^inf @ 0", 2)
        assert x.left in ((0, 1), (1, 0))

    def test_periodic_uses_least_rotation(self):
        """Fully periodic sequences use the least rotation."""
        x = periodic((1, 0))
        assert x == BiInfiniteSeq((0, 1), (), (0, 1), 1)
        assert x.letter(0) == 1
        assert x.is_periodic

    def test_shifted(self, spike):
        """Shifting moves the center right."""
        y = spike.shifted(2)
        assert y.letter(2) == 1
        assert y.letter(0) == 0


class TestAnnotatedTransducer:
    """Tests for annotated pairs and their products."""

    def test_missing_state(self, shift2):
        """Every state needs a value."""
        with pytest.raises(DomainError):
            AnnotatedTransducer(shift2, {"a1": 0})

    def test_rule_violation(self, inclusion):
        """Values must follow output lengths along edges."""
        with pytest.raises(DomainError, match="Annotation rule"):
            AnnotatedTransducer(inclusion, {q: 0 for q in inclusion.states})

    def test_canonical_annotation(self, inclusion):
        """The canonical annotation has least value 0."""
        assert canonical_annotation(inclusion) == {
            "a1": 1, "a2": 0, "a3": 2, "a4": 0, "a5": 1, "a6": 2,
        }

    def test_no_annotation_outside_Ln(self):
        """A machine without a potential has no annotation."""
        T = DetTransducer(
            2, ("a",),
            {(0, "a"): "a", (1, "a"): "a"},
            {(0, "a"): (0,), (1, "a"): (1, 1)},
        )
        with pytest.raises(MembershipError):
            canonical_annotation(T)

    def test_shift_powers_add(self):
        """shift^1 * shift^2 = shift^3."""
        assert same_pair(shift_pair(2, 1) * shift_pair(2, 2), shift_pair(2, 3))
        assert list(shift_pair(2).power(3).annotation.values()) == [3]

    def test_shift_machine_realizes_shift(self, shift2):
        """Sigma_2 with its canonical annotation is shift^1."""
        assert same_pair(canonical_pair(shift2) * identity_pair(2), shift_pair(2, 1))

    def test_product_annotation_adds_values(self):
        """Annotations of one-state factors add up."""
        machine, annotation = product_annotation(identity(2), {"a1": 1}, identity(2), {"a1": 2})
        assert len(machine.states) == 1
        assert list(annotation.values()) == [3]

    def test_inverse(self, swap3):
        """A pair times its inverse is the identity."""
        pair = canonical_pair(swap3)
        assert (pair * pair.inverse()).is_identity

    def test_negative_power(self):
        """shift^-2 undoes shift^2."""
        assert (shift_pair(2).power(-2) * shift_pair(2, 2)).is_identity


class TestApply:
    """Tests for apply on eventually periodic sequences."""

    def test_shift(self, spike):
        """shift^1 moves every letter one place right."""
        assert apply(shift_pair(2), spike) == spike.shifted(1)

    def test_shift_machine(self, spike, shift2):
        """The shift transducer acts as the shift."""
        assert apply(canonical_pair(shift2), spike) == spike.shifted(1)

    def test_conditional_permutation(self, cond3):
        """A 1 after 0 becomes 2."""
        x = parse_sequence("(0)^-inf . 1 . (0)^inf @ 0", 3)
        expected = parse_sequence("(0)^-inf . 2 . (0)^inf @ 0", 3)
        assert apply(canonical_pair(cond3), x) == expected

    def test_alphabet_checked(self, swap3):
        """Sequences must use the machine's letters."""
        x = parse_sequence("(0)^-inf . 3 . (0)^inf @ 0")
        with pytest.raises(FormatError):
            apply(canonical_pair(swap3), x)

    def test_tail_must_close(self, cond3):
        """A level too small to force the tail state is a domain error."""
        pair = canonical_pair(cond3)
        pair.__dict__["level"] = 0
        x = parse_sequence("(1)^-inf . 2 . (1)^inf @ 0", 3)
        with pytest.raises(DomainError):
            apply(pair, x)


class TestLocalRules:
    """Tests for sliding block codes."""

    def test_table_size_checked(self):
        """The table has n^m entries."""
        with pytest.raises(DomainError):
            LocalRule(2, 2, (0, 1, 1))

    def test_anticipation_range(self):
        """Anticipation lies in [0, m)."""
        with pytest.raises(DomainError):
            LocalRule(2, 2, (0, 1, 1, 0), anticipation=2)

    def test_permutive(self, xor_rule):
        """XOR is permutive on both sides."""
        assert is_right_permutive(xor_rule)
        assert is_left_permutive(xor_rule)
        assert not is_left_permutive(LocalRule(2, 2, (0, 1, 0, 1)))

    def test_on_sequence(self, xor_rule, spike):
        """A single 1 spreads to two places."""
        expected = parse_sequence("(0)^-inf . 1,1 . (0)^inf @ 0", 2)
        assert xor_rule.on_sequence(spike) == expected

    def test_transducer_matches_rule(self, xor_rule, spike):
        """The converted pair acts like the block map."""
        pair = local_rule_to_transducer(xor_rule)
        assert len(pair.machine.states) == 2
        assert apply(pair, spike) == xor_rule.on_sequence(spike)

    def test_identity_rule(self):
        """The one-letter identity rule gives the identity pair."""
        assert local_rule_to_transducer(LocalRule(2, 1, (0, 1))).is_identity

    def test_delay_rule_is_shift(self):
        """y_i = x_(i-1) converts to shift^1."""
        pair = local_rule_to_transducer(LocalRule(2, 2, (0, 0, 1, 1)))
        assert same_pair(pair, shift_pair(2, 1))

    def test_constant_rule_is_degenerate(self):
        """A rule writing only 0 is not surjective."""
        with pytest.raises(DegenerateError):
            local_rule_to_transducer(LocalRule(2, 1, (0, 0)))

    def test_calibrate_finds_offset(self, spike):
        """Calibration moves the annotation to match a direct evaluation."""
        pair = calibrate(identity_pair(2), lambda x: x.shifted(1), spike, 3)
        assert pair.annotation == {"a1": 1}

    def test_calibrate_gives_up(self, spike):
        """No shift turns the identity into a letter swap."""
        swap = LocalRule(2, 1, (1, 0))
        with pytest.raises(DomainError):
            calibrate(identity_pair(2), swap.on_sequence, spike, 2)


class TestPiAction:
    """Tests for the action on rotation classes."""

    def test_identity_fixes_classes(self):
        """Nothing moves under the identity."""
        action = pi_action(identity(2), 4)
        assert moved_classes(action) == {}
        assert permutes_each_length(action)

    def test_conditional_swap(self, cond3):
        """[01] and [02] trade places; [12] stays."""
        action = pi_action(cond3, 2)
        assert moved_classes(action) == {(0, 1): (0, 2), (0, 2): (0, 1)}
        assert action[(1, 2)] == (1, 2)

    def test_follow_is_composition(self, cond3):
        """Following the swap twice fixes every class."""
        action = pi_action(cond3, 3)
        assert moved_classes(follow(action, action)) == {}

    def test_k_max_positive(self):
        """The length bound must be positive."""
        with pytest.raises(DomainError):
            pi_action(identity(2), 0)

    def test_circuit_must_close(self):
        """class_image needs a level that forces the circuit state."""
        delay = DetTransducer(
            2, ("00", "01", "10", "11"),
            {(x, s): s[1] + str(x) for x in (0, 1) for s in ("00", "01", "10", "11")},
            {(x, s): (int(s[0]),) for x in (0, 1) for s in ("00", "01", "10", "11")},
        )
        assert class_image(delay, (1,), 2) == (1,)
        with pytest.raises(DomainError):
            class_image(delay, (1,), 0)

    def test_reverse_class(self):
        """Reversal is taken up to rotation."""
        assert reverse_class((0, 1, 2)) == (0, 2, 1)
        assert reverse_class((0, 0, 1)) == (0, 0, 1)
