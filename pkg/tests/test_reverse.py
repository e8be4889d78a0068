"""Tests for reversed machines, recovery and the reverse automorphism."""

import pytest

from errors import DomainError
from machines.base import NondetEdge, as_nondet
from machines.core import is_isomorphic, minimize
from machines.images import Antichain
from machines.library import identity
from machines.reverse import (
    nd_inverse_view,
    nd_path_gcp,
    probe_q1,
    rec,
    rev,
    rev_automorphism,
    rev_domain,
    rev_sig,
)
from machines.signatures import SigValue


class TestRev:
    """Tests for rev and nd_inverse_view."""

    def test_edges_flip(self, shift2):
        """Each edge p -x-> t becomes t -x-> p with the output reversed."""
        N = rev(shift2)
        assert len(N.edges) == 4
        edge = next(e for e in N.edges if e.target == "a1" and e.input == (1,))
        assert edge.source == "a2"
        assert edge.output == (0,)

    def test_multi_letter_output_reversed(self, inclusion):
        """Outputs are written backwards."""
        N = rev(inclusion)
        edge = next(e for e in N.edges if e.source == "a3" and e.target == "a2")
        assert edge.output == (0, 1, 1)

    def test_inverse_view_swaps_labels(self, gen23):
        """The inverse view reads outputs and writes inputs."""
        N = nd_inverse_view(gen23)
        edge = next(e for e in N.edges if e.source == "q1" and e.output == (2,))
        assert edge.input == (5,)
        assert edge.target == "q0"


class TestRevDomain:
    """Tests for rev_domain and nd_path_gcp."""

    def test_domain_of_reversed_shift(self, shift2):
        """Reversed a1 only reads 0 first; the cones merge back to one."""
        N = rev(shift2)
        assert rev_domain(N, "a1", 1) == Antichain(((0,),))
        assert rev_domain(N, "a1", 2) == Antichain(((0,),))
        assert rev_domain(N, "a2", 1) == Antichain(((1,),))

    def test_permutation_domain_is_everything(self, swap3):
        """A reversed letter permutation reads every word."""
        assert rev_domain(rev(swap3), "p", 2) == Antichain(((),))

    def test_path_gcp_stops_at_branch(self, shift2):
        """Reading 0,0 forces the loop at a1, then the path branches."""
        path = nd_path_gcp(rev(shift2), "a1", (0, 0))
        assert path == [NondetEdge((0,), "a1", "a1", (0,))]

    def test_path_gcp_outside_domain(self, shift2):
        """Words the state cannot read are domain errors."""
        with pytest.raises(DomainError, match="not in the domain"):
            nd_path_gcp(rev(shift2), "a1", (1,))


class TestRec:
    """Tests for rec."""

    def test_recovers_deterministic_machine(self, cond3):
        """A deterministic machine survives the round trip."""
        assert is_isomorphic(minimize(rec(as_nondet(cond3))), cond3)

    def test_recovers_identity(self):
        """The identity has a one-state recovery."""
        assert is_isomorphic(minimize(rec(as_nondet(identity(2)))), identity(2))


class TestRevAutomorphism:
    """Tests for rev_automorphism, rev_sig and the probe."""

    def test_letter_permutation_fixed(self, swap3):
        """Reversal leaves letter permutations alone."""
        assert is_isomorphic(rev_automorphism(swap3), swap3)

    def test_involution(self, cond3):
        """Reversing twice gives back the machine."""
        once = rev_automorphism(cond3)
        assert is_isomorphic(rev_automorphism(once), minimize(cond3))

    def test_rev_sig_of_permutation(self, swap3):
        """A single-cone machine has rev_sig 1."""
        assert rev_sig(swap3) == SigValue(1, 2)

    def test_rev_sig_binary(self, shift2):
        """Binary signatures are trivial."""
        assert str(rev_sig(shift2)) == "0 (mod 1)"

    def test_probe_on_permutation(self, swap3):
        """Both sides agree on a permutation."""
        result = probe_q1(swap3)
        assert result.agree
        assert result.inverse_sig == SigValue(1, 2)
