"""Tests for words.py"""

import pytest

from errors import FormatError, WordError
from words import (
    canonical_rotation,
    common_prefix,
    enumerate_prime_classes,
    format_word,
    is_prefix,
    is_prime,
    necklace_count,
    parse_word,
    prime_root,
    reverse,
    rotations,
    words_of_length,
)


class TestParseWord:
    """Tests for word literals."""

    def test_parse_letters(self):
        """Test parsing a comma-separated word."""
        assert parse_word("0,1,1", 2) == (0, 1, 1)

    def test_parse_empty(self):
        """Test that '-' and the empty string both mean the empty word."""
        assert parse_word("-") == ()
        assert parse_word("") == ()

    def test_letter_outside_alphabet(self):
        """Test that a letter >= n is rejected."""
        with pytest.raises(FormatError):
            parse_word("0,2", 2)

    def test_non_integer(self):
        """Test that non-numeric letters are rejected."""
        with pytest.raises(FormatError):
            parse_word("0,a")

    def test_format_round_trip(self):
        """Test that format_word writes what parse_word reads."""
        assert format_word((2, 0, 1)) == "2,0,1"
        assert format_word(()) == "-"
        assert parse_word(format_word((1, 0))) == (1, 0)


class TestPrimality:
    """Tests for prime roots and rotation classes."""

    def test_prime_root_of_power(self):
        """Test the root of a proper power."""
        assert prime_root((0, 1, 0, 1, 0, 1)) == (0, 1)

    def test_prime_root_of_prime(self):
        """Test that a prime word is its own root."""
        assert prime_root((0, 0, 1)) == (0, 0, 1)

    def test_prime_root_empty(self):
        """Test that the empty word has no root."""
        with pytest.raises(WordError):
            prime_root(())

    def test_is_prime(self):
        """Test is_prime on powers and primes."""
        assert is_prime((0, 1, 1))
        assert is_prime((1,))
        assert not is_prime((0, 0))
        assert not is_prime((1, 2, 1, 2))

    def test_canonical_rotation(self):
        """Test that the least rotation is chosen."""
        assert canonical_rotation((1, 0, 0)) == (0, 0, 1)
        assert canonical_rotation((2, 1, 0, 1)) == (0, 1, 2, 1)

    def test_rotations(self):
        """Test the list of rotations."""
        assert rotations((0, 1, 2)) == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]

    def test_reverse(self):
        """Test reversal."""
        assert reverse((0, 1, 2)) == (2, 1, 0)


class TestPrimeClasses:
    """Tests for enumerating rotation classes of prime words."""

    def test_binary_length_three(self):
        """Test the two binary classes of length 3."""
        assert enumerate_prime_classes(2, 3) == [(0, 0, 1), (0, 1, 1)]

    def test_binary_length_four(self):
        """Test that (0,1,0,1) is excluded as a proper power."""
        assert enumerate_prime_classes(2, 4) == [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1)]

    def test_length_one(self):
        """Test that every letter is its own class."""
        assert enumerate_prime_classes(3, 1) == [(0,), (1,), (2,)]

    @pytest.mark.parametrize("n,k", [(2, 1), (2, 5), (2, 6), (3, 2), (3, 4), (4, 3)])
    def test_count_matches_necklace_formula(self, n, k):
        """Test that enumeration agrees with the Mobius count."""
        assert len(enumerate_prime_classes(n, k)) == necklace_count(n, k)

    def test_invalid_arguments(self):
        """Test that n < 2 is rejected."""
        with pytest.raises(WordError):
            enumerate_prime_classes(1, 3)


class TestPrefixes:
    """Tests for prefix helpers."""

    def test_common_prefix(self):
        """Test the greatest common prefix."""
        assert common_prefix([(0, 1, 1), (0, 1, 0), (0, 1)]) == (0, 1)
        assert common_prefix([(1,), (0,)]) == ()

    def test_is_prefix(self):
        """Test prefix checks."""
        assert is_prefix((0,), (0, 1))
        assert is_prefix((), (1,))
        assert not is_prefix((1, 0), (1,))

    def test_words_of_length_order(self):
        """Test lexicographic enumeration."""
        assert list(words_of_length(2, 2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
