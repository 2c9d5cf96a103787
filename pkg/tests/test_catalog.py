import numpy as np
import pytest

from catalog import (
    WeakGrid,
    build_block_projectors,
    build_entry,
    build_hollow_triangle,
    build_noncommuting_pair,
    build_qutrit_triple,
    build_repeatable_observable,
    build_weak_povm,
    list_entries,
    literal_matrix,
    nilpotent_map,
    verify_claims,
)
from catalog.constructions import QUTRIT_A
from compat import commutes
from measurement import validate_povm
from qmat import PAULI_Z, commutator_norm, random_hermitian
from utils.errors import CatalogError


class TestConstructions:
    def test_literal_matrix(self):
        m = literal_matrix([["1", "sqrt(2)"], ["sqrt(2)", "0"]], "1/2")
        np.testing.assert_allclose(m, [[0.5, np.sqrt(2) / 2], [np.sqrt(2) / 2, 0.0]])

    @pytest.mark.parametrize("d", [5, 6, 7])
    def test_repeatable_observable(self, d):
        a = build_repeatable_observable(d)
        assert a.dim == d
        assert validate_povm(a).ok
        for element in a.elements:
            assert element.max_eigenvalue() == pytest.approx(1.0, abs=1e-12)

    def test_repeatable_commutator(self):
        """[A_1, A_2] = [R_1, R_2]/4 on the qubit block"""
        a = build_repeatable_observable(5)
        assert commutator_norm(a.elements[0].data, a.elements[1].data) == pytest.approx(0.125, abs=1e-12)

    def test_small_dimension_rejected(self):
        with pytest.raises(ValueError):
            build_repeatable_observable(4)

    def test_block_projectors(self):
        b = build_block_projectors(6)
        assert b.is_projective()
        assert [e.trace() for e in b.elements] == pytest.approx([4.0, 2.0])

    def test_noncommuting_pair(self):
        a, merged = build_noncommuting_pair(5)
        assert len(merged) == 2
        np.testing.assert_allclose(merged.element(2).data, a.element(2).data + a.element(3).data, atol=1e-12)
        assert not commutes(a, merged).commuting

    def test_hollow_triangle_joint(self):
        tri = build_hollow_triangle(5)
        assert len(tri.joint) == len(tri.a) * len(tri.b)
        assert validate_povm(tri.joint).ok

    def test_qutrit_instrument(self, rng):
        tri = build_qutrit_triple()
        induced = tri.instrument_a.induced_povm()
        for element, printed in zip(induced.elements, QUTRIT_A):
            np.testing.assert_allclose(element.data, printed, atol=1e-10)
        for _ in range(5):
            x = random_hermitian(3, rng).data
            np.testing.assert_allclose(tri.channel.adjoint(x), nilpotent_map(x), atol=1e-10)

    def test_qutrit_c_from_channel(self):
        tri = build_qutrit_triple()
        p1, p2 = np.diag([1.0, 0, 0]), np.diag([0, 1.0, 0])
        np.testing.assert_allclose(tri.channel.adjoint(p1 / 3 + p2 / 2), tri.c.elements[0].data, atol=1e-12)

    def test_weak_povm(self):
        w = build_weak_povm(PAULI_Z, 0.5, WeakGrid(2.0, 5))
        assert len(w) == 7
        assert w.labels == tuple(range(7))
        assert validate_povm(w).ok
        assert commutes(w, build_weak_povm(PAULI_Z, 0.1)).commuting

    def test_weak_single_bin(self):
        w = build_weak_povm(PAULI_Z, 1.0, WeakGrid(2.0, 1))
        assert len(w) == 1
        np.testing.assert_allclose(w.elements[0].data, np.eye(2))

    def test_weak_invalid(self):
        with pytest.raises(ValueError):
            build_weak_povm(PAULI_Z, 0.0)
        with pytest.raises(ValueError):
            WeakGrid(-1.0, 3)


class TestRegistry:
    def test_list_entries(self):
        entries = list_entries()
        assert "qubit-two-time" in entries
        assert "qutrit-hollow-triangle" in entries
        assert len(entries) == len(set(entries)) == 8

    def test_unknown_entry(self):
        with pytest.raises(CatalogError):
            build_entry("nonexistent")

    def test_entry_dict(self):
        entry = build_entry("repeatable-observable", d=7)
        out = entry.to_dict()
        assert out["params"] == {"d": 7}
        assert len(out["objects"]["A"]["elements"]) == 3
        assert {c["id"] for c in out["claims"]} >= {"valid-povm", "eigenvalue-one"}

    @pytest.mark.parametrize("entry_id", ["qubit-two-time", "trivial-povms", "channel-reachability",
                                          "weak-measurement"])
    def test_cheap_entries_verify(self, entry_id):
        verification = verify_claims(build_entry(entry_id))
        assert verification.passed, verification.to_dict()["failed"]

    def test_qutrit_entry_verifies(self):
        verification = verify_claims(build_entry("qutrit-hollow-triangle"), threads=2)
        assert verification.passed, verification.to_dict()["failed"]
        assert len(verification.results) == 13
