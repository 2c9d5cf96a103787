import numpy as np
import pytest

from measurement import (
    Channel,
    Instrument,
    Povm,
    choi_from_kraus,
    coin_flip_povm,
    compose_instrument,
    depolarizing_channel,
    identity_channel,
    instrument_from_kraus,
    kraus_from_choi,
    lueders_instrument,
    measure_prepare_instrument,
    mix_instruments,
    pvm_from_observable,
    random_channel,
    random_instrument,
    random_povm,
    random_pvm,
    replacement_channel,
    sequential_povm,
    total_channel,
    trivial_povm,
    unitary_channel,
    validate_channel,
    validate_instrument,
    validate_povm,
)
from qmat import PAULI_X, PAULI_Z, random_density, random_hermitian, random_unitary
from utils.errors import CompletenessError, UnknownOutcomeError

PLUS = np.full((2, 2), 0.5)


class TestPovm:
    def test_pvm_from_observable(self, sigma_z):
        """Labels are eigenvalues, largest first"""
        assert sigma_z.labels == (1, -1)
        np.testing.assert_allclose(sigma_z.element(1).data, np.diag([1.0, 0.0]), atol=1e-12)
        assert sigma_z.is_projective()

    def test_degenerate_observable_merges_projectors(self):
        p = pvm_from_observable(np.diag([2.0, 2.0, -1.0]))
        assert len(p) == 2
        assert p.element(2).trace() == pytest.approx(2.0)

    def test_unknown_label(self, sigma_z):
        with pytest.raises(UnknownOutcomeError):
            sigma_z.element(7)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            Povm([np.eye(2) / 2, np.eye(2) / 2], ("a", "a"))

    def test_double_identity_defects(self):
        """{1, 1} overshoots completeness by the identity"""
        report = validate_povm(Povm([np.eye(3), np.eye(3)]))
        assert not report.ok
        assert report.completeness_defect == pytest.approx(1.0)
        assert report.completeness_trace_defect == pytest.approx(3.0)

    def test_negative_element_flagged(self):
        report = validate_povm(Povm([np.diag([1.5, 0.5]), np.diag([-0.5, 0.5])]))
        assert not report.ok
        assert report.min_eigenvalues[1] == pytest.approx(-0.5)
        assert any("positive semidefinite" in v for v in report.violations)

    def test_trivial_povms_valid(self):
        assert validate_povm(trivial_povm(3)).ok
        assert validate_povm(coin_flip_povm(2)).ok

    def test_random_povm_valid(self, rng):
        for outcomes in (2, 3, 5):
            assert validate_povm(random_povm(3, outcomes, rng)).ok
        p = random_pvm(4, rng, outcomes=2)
        assert validate_povm(p).ok and p.is_projective()


class TestChannel:
    def test_adjoint_duality(self, rng):
        """tr(X L(rho)) = tr(L*(X) rho)"""
        channel = random_channel(3, rng)
        rho = random_density(3, rng).data
        x = random_hermitian(3, rng).data
        lhs = np.trace(x @ channel.apply(rho))
        rhs = np.trace(channel.adjoint(x) @ rho)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_random_channel_valid(self, rng):
        report = validate_channel(random_channel(3, rng, rank=2))
        assert report.ok
        assert report.trace_preservation_defect < 1e-10

    def test_unitary_channel(self, rng):
        u = random_unitary(2, rng)
        channel = unitary_channel(u)
        assert channel.is_unitary()
        np.testing.assert_allclose(channel.apply(PLUS), u @ PLUS @ u.conj().T, atol=1e-12)
        np.testing.assert_allclose(channel.adjoint(PAULI_Z), u.conj().T @ PAULI_Z @ u, atol=1e-12)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            unitary_channel(np.diag([1.0, 0.5]))

    def test_composition_with_inverse_is_identity(self, rng):
        u = random_unitary(3, rng)
        composed = unitary_channel(u).then(unitary_channel(u.conj().T))
        np.testing.assert_allclose(composed.choi.data, identity_channel(3).choi.data, atol=1e-10)

    def test_depolarizing(self):
        full = depolarizing_channel(2, 0.0)
        np.testing.assert_allclose(full.apply(PLUS), np.eye(2) / 2, atol=1e-12)
        half = depolarizing_channel(2, 0.5)
        np.testing.assert_allclose(half.adjoint(PAULI_Z), 0.5 * PAULI_Z, atol=1e-12)
        assert not full.is_unitary()

    def test_replacement(self):
        sigma = np.diag([0.25, 0.75])
        np.testing.assert_allclose(replacement_channel(sigma).apply(PLUS), sigma, atol=1e-12)

    def test_kraus_roundtrip(self, rng):
        channel = random_channel(2, rng)
        rebuilt = choi_from_kraus(kraus_from_choi(channel.choi.data))
        np.testing.assert_allclose(rebuilt, channel.choi.data, atol=1e-10)

    def test_trace_decreasing_flagged(self):
        report = validate_channel(Channel.from_kraus([np.diag([1.0, 0.5])]))
        assert not report.ok


class TestInstrument:
    def test_lueders(self, sigma_z):
        instrument = lueders_instrument(sigma_z)
        report = validate_instrument(instrument, sigma_z)
        assert report.ok
        np.testing.assert_allclose(instrument.apply(1, PLUS), np.diag([0.5, 0.0]), atol=1e-12)

    def test_lueders_rejects_invalid_povm(self):
        with pytest.raises(CompletenessError):
            lueders_instrument(Povm([np.eye(2), np.eye(2)]))

    def test_heisenberg_kraus(self):
        """Heisenberg operators are conjugate-transposed before storage"""
        lower = np.array([[0.0, 0.0], [1.0, 0.0]])
        keep = np.diag([1.0, 0.0])
        instrument = instrument_from_kraus([[lower], [keep]], picture="heisenberg", labels=("flip", "keep"))
        induced = instrument.induced_povm()
        np.testing.assert_allclose(induced.element("flip").data, lower @ lower.T, atol=1e-12)
        np.testing.assert_allclose(instrument.apply("flip", np.diag([0.0, 1.0])), np.diag([1.0, 0.0]), atol=1e-12)

    def test_incomplete_kraus(self):
        with pytest.raises(CompletenessError):
            instrument_from_kraus([[np.diag([1.0, 0.0])]])

    def test_sequential_povm(self, sigma_z, sigma_x):
        """Lueders sigma_z then sigma_x: every joint element is P_x / 2"""
        joint = sequential_povm(lueders_instrument(sigma_z), sigma_x)
        assert joint.labels == ((1, 1), (1, -1), (-1, 1), (-1, -1))
        for (x, _), element in joint:
            np.testing.assert_allclose(element.data, 0.5 * sigma_z.element(x).data, atol=1e-12)
        assert validate_povm(joint).ok

    def test_measure_prepare(self, sigma_z):
        instrument = measure_prepare_instrument(sigma_z, [PLUS, PLUS])
        assert validate_instrument(instrument, sigma_z).ok
        out = instrument.apply(-1, np.diag([0.25, 0.75]))
        np.testing.assert_allclose(out, 0.75 * PLUS, atol=1e-12)

    def test_total_channel_is_trace_preserving(self, rng):
        povm = random_povm(3, 3, rng)
        channel = total_channel(random_instrument(povm, rng))
        assert validate_channel(channel).ok

    def test_total_channel_keeps_kraus(self, sigma_z):
        channel = total_channel(lueders_instrument(sigma_z))
        assert len(channel.kraus()) == 2
        np.testing.assert_allclose(choi_from_kraus(channel.kraus()), channel.choi.data, atol=1e-12)

    def test_total_channel_rejects_trace_decreasing(self):
        instrument = Instrument([choi_from_kraus([0.5 * np.eye(2)]), choi_from_kraus([0.5 * np.eye(2)])])
        with pytest.raises(CompletenessError):
            total_channel(instrument)

    def test_compose_keeps_povm(self, rng, sigma_x):
        instrument = compose_instrument(lueders_instrument(sigma_x), after=random_channel(2, rng))
        assert validate_instrument(instrument, sigma_x).ok

    def test_compose_before_transports_povm(self, rng, sigma_z):
        u = random_unitary(2, rng)
        instrument = compose_instrument(lueders_instrument(sigma_z), before=unitary_channel(u))
        induced = instrument.induced_povm()
        np.testing.assert_allclose(induced.element(1).data, u.conj().T @ sigma_z.element(1).data @ u, atol=1e-10)

    def test_mix(self, rng, sigma_z):
        first = lueders_instrument(sigma_z)
        second = random_instrument(sigma_z, rng)
        assert validate_instrument(mix_instruments(first, second, 0.3), sigma_z).ok

    def test_wrong_povm_flagged(self, sigma_z, sigma_x):
        report = validate_instrument(lueders_instrument(sigma_z), sigma_x)
        assert not report.ok
        assert any("does not implement" in v for v in report.violations)

    def test_non_cp_branch_flagged(self):
        choi = choi_from_kraus([np.eye(2)])
        instrument = Instrument([choi, -0.1 * choi])
        report = validate_instrument(instrument)
        assert not report.ok
        assert report.min_choi_eigenvalues[1] < 0
