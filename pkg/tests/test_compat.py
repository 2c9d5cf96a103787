import numpy as np
import pytest

from compat import (
    classify,
    commutes,
    exact_disturbance_terms,
    first_kind,
    hierarchy_suite,
    jointly_measurable,
    nondisturbance,
    random_commuting_povm,
    repeatable_eigenvalue_check,
    span_commutativity_criterion,
)
from measurement import Povm, coin_flip_povm, lueders_instrument, validate_povm
from qmat import PAULI_I, PAULI_X, PAULI_Z, random_unitary


def unsharp(pauli, eta):
    return Povm([0.5 * (PAULI_I + eta * pauli), 0.5 * (PAULI_I - eta * pauli)], (1, -1))


class TestCommutes:
    def test_same_basis(self, sigma_z):
        result = commutes(sigma_z, sigma_z)
        assert result.commuting
        assert result.max_commutator_norm < 1e-12

    def test_complementary_bases(self, sigma_z, sigma_x):
        result = commutes(sigma_z, sigma_x)
        assert not result.commuting
        assert result.max_commutator_norm == pytest.approx(0.5)

    def test_trivial_commutes_with_anything(self, sigma_x):
        assert commutes(coin_flip_povm(2), sigma_x).commuting


class TestJointMeasurability:
    def test_sharp_complementary_not_jm(self, sigma_z, sigma_x):
        assert not jointly_measurable(sigma_z, sigma_x).feasible

    def test_unsharp_below_threshold(self):
        """eta_z^2 + eta_x^2 <= 1 is jointly measurable"""
        a, b = unsharp(PAULI_Z, 0.6), unsharp(PAULI_X, 0.6)
        result = jointly_measurable(a, b)
        assert result.feasible
        joint = result.joint
        assert validate_povm(joint).ok
        marginal = sum(e.data for (x, _), e in joint if x == 1)
        np.testing.assert_allclose(marginal, a.element(1).data, atol=1e-6)

    def test_unsharp_above_threshold(self):
        assert not jointly_measurable(unsharp(PAULI_Z, 0.8), unsharp(PAULI_X, 0.8)).feasible

    def test_needs_two(self, sigma_z):
        with pytest.raises(ValueError):
            jointly_measurable(sigma_z)


class TestNondisturbance:
    def test_complementary_qubit_value(self, sigma_z, sigma_x):
        """Any instrument of sigma_z leaves Lambda^*(sigma_x) diagonal, so D = 1"""
        result = nondisturbance(sigma_z, sigma_x)
        assert not result.nondisturbing
        assert result.value == pytest.approx(1.0, abs=1e-5)
        assert sum(result.per_term) == pytest.approx(result.value)

    def test_lueders_terms(self, sigma_z, sigma_x):
        terms = exact_disturbance_terms(lueders_instrument(sigma_z), [e.data for e in sigma_x.elements])
        np.testing.assert_allclose(terms, [0.5, 0.5], atol=1e-12)

    def test_commuting_pair_nondisturbing(self, rng):
        u = random_unitary(3, rng)
        a = random_commuting_povm(3, 3, rng, u)
        b = random_commuting_povm(3, 2, rng, u)
        assert nondisturbance(a, b).nondisturbing
        assert nondisturbance(b, a).nondisturbing

    def test_projective_first_kind(self, sigma_z):
        assert first_kind(sigma_z)

    def test_repeatable_eigenvalue_check(self, sigma_z):
        assert repeatable_eigenvalue_check(sigma_z)
        assert not repeatable_eigenvalue_check(coin_flip_povm(2))


class TestSpanCriterion:
    def test_projective_target_disturbed(self, sigma_z, sigma_x):
        verdict = span_commutativity_criterion(sigma_z, sigma_x)
        assert verdict.applicable
        assert verdict.nondisturbing is False
        assert verdict.witness is not None

    def test_unsharp_target_commuting(self, sigma_z):
        verdict = span_commutativity_criterion(sigma_z, unsharp(PAULI_Z, 0.6))
        assert verdict.applicable
        assert verdict.nondisturbing is True

    def test_not_applicable(self):
        """Three distinct eigenvalues: the square leaves span{E_1, E_2}"""
        e = Povm([np.diag([0.2, 0.5, 0.7]), np.diag([0.8, 0.5, 0.3])])
        verdict = span_commutativity_criterion(coin_flip_povm(3), e)
        assert not verdict.applicable
        assert verdict.nondisturbing is None


class TestClassify:
    def test_complementary(self, sigma_z, sigma_x):
        report = classify(sigma_z, sigma_x)
        assert not report.commuting
        assert not report.jointly_measurable
        assert not report.nondisturbing_forward
        assert not report.nondisturbing_backward
        assert report.first_kind == {"a": True, "b": True}
        assert report.hierarchy_errors() == []

    def test_commuting(self, rng):
        u = random_unitary(2, rng)
        report = classify(random_commuting_povm(2, 2, rng, u), random_commuting_povm(2, 3, rng, u),
                          with_first_kind=False)
        assert report.commuting
        assert report.nondisturbing_forward and report.nondisturbing_backward
        assert report.jointly_measurable
        assert report.to_dict()["commuting"] is True

    def test_hierarchy_suite(self):
        stats = hierarchy_suite(2, trials=4, seed=3)
        assert stats.passed
        assert stats.commuting >= 2
        assert stats.nondisturbing >= stats.commuting
        assert stats.jointly_measurable >= stats.nondisturbing
