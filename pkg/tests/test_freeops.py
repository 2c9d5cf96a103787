import numpy as np
import pytest

from compat import exact_disturbance_terms
from freeops import (
    MONOTONE_QUBIT,
    MONOTONE_UNITARY,
    MONOTONE_UNKNOWN,
    DepolarizingParam,
    PostProcessing,
    commutativity_preserved,
    depolarize_instrument,
    depolarize_local,
    monotonicity_suite,
    post_process,
    post_process_instrument,
    pre_process_global,
    transport_unitary_instrument,
)
from measurement import (
    coin_flip_povm,
    depolarizing_channel,
    identity_channel,
    lueders_instrument,
    random_channel,
    random_povm,
    total_channel,
    unitary_channel,
    validate_instrument,
)
from mrmeasure import disturbance_fixed
from qmat import random_unitary
from utils.config import DEFAULT_TOLERANCES
from utils.errors import ConfigError, DimensionMismatchError


class TestPostProcessing:
    def test_merge_kernel(self):
        k = PostProcessing.merge([[0], [1, 2]], 3, labels=("first", "rest"))
        np.testing.assert_array_equal(k.kernel, [[1, 0, 0], [0, 1, 1]])
        assert (k.inputs, k.outputs) == (3, 2)

    def test_invalid_kernels(self):
        with pytest.raises(ValueError):
            PostProcessing([[0.5, 0.5], [0.4, 0.5]])
        with pytest.raises(ValueError):
            PostProcessing([[1.5, 1.0], [-0.5, 0.0]])
        with pytest.raises(ValueError):
            PostProcessing(np.eye(2), labels=("only",))

    def test_identity_keeps_povm(self, sigma_z):
        mapped = post_process(sigma_z, PostProcessing.identity(2))
        for x, y in zip(mapped.elements, sigma_z.elements):
            np.testing.assert_allclose(x.data, y.data)

    def test_total_gives_trivial_povm(self, sigma_x):
        mapped = post_process(sigma_x, PostProcessing.total(2))
        assert len(mapped) == 1
        np.testing.assert_allclose(mapped.elements[0].data, np.eye(2), atol=1e-12)

    def test_kernel_size_checked(self, sigma_z):
        with pytest.raises(ValueError):
            post_process(sigma_z, PostProcessing.identity(3))

    def test_instrument_keeps_total_channel(self, rng, sigma_z):
        instrument = lueders_instrument(sigma_z)
        k = PostProcessing.random(2, 3, rng)
        mapped = post_process_instrument(instrument, k)
        assert validate_instrument(mapped, post_process(sigma_z, k)).ok
        np.testing.assert_allclose(total_channel(mapped).choi.data, total_channel(instrument).choi.data, atol=1e-12)


class TestDepolarizing:
    def test_parameter_range(self):
        with pytest.raises(ValueError):
            DepolarizingParam(1.5, 2)

    def test_local_full_depolarization(self, sigma_z):
        mapped = depolarize_local(sigma_z, DepolarizingParam(0.0, 2))
        for element in mapped.elements:
            np.testing.assert_allclose(element.data, 0.5 * np.eye(2), atol=1e-12)

    def test_dimension_checked(self, sigma_z):
        with pytest.raises(DimensionMismatchError):
            depolarize_local(sigma_z, DepolarizingParam(0.5, 3))

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.75])
    def test_identity_channel_scales_disturbance(self, sigma_z, sigma_x, alpha):
        """With Lambda_D = id the disturbance is exactly alpha times the original"""
        param = DepolarizingParam(alpha, 2)
        instrument = depolarize_instrument(lueders_instrument(sigma_z), param, identity_channel(2))
        report = disturbance_fixed(depolarize_local(sigma_z, param), instrument, sigma_x)
        np.testing.assert_allclose(report.per_term, [0.5 * alpha, 0.5 * alpha], atol=1e-9)

    def test_alpha_one_is_identity(self, rng, sigma_z):
        instrument = lueders_instrument(sigma_z)
        mapped = depolarize_instrument(instrument, DepolarizingParam(1.0, 2), random_channel(2, rng))
        for x, y in zip(mapped.chois, instrument.chois):
            np.testing.assert_allclose(x.data, y.data, atol=1e-12)


class TestGlobalPreprocessing:
    def test_unitary_transport_preserves_terms(self, rng, sigma_z, sigma_x):
        u = random_unitary(2, rng)
        pre = pre_process_global([sigma_z, sigma_x], unitary_channel(u))
        assert pre.guaranteed and pre.monotonicity == MONOTONE_UNITARY
        moved = transport_unitary_instrument(lueders_instrument(sigma_z), u)
        assert validate_instrument(moved, pre.povms[0]).ok
        before = exact_disturbance_terms(lueders_instrument(sigma_z), [e.data for e in sigma_x.elements])
        after = exact_disturbance_terms(moved, [e.data for e in pre.povms[1].elements])
        np.testing.assert_allclose(after, before, atol=1e-10)

    def test_qubit_channel_guaranteed(self, sigma_z, sigma_x):
        pre = pre_process_global([sigma_z, sigma_x], depolarizing_channel(2, 0.5))
        assert pre.guaranteed and pre.monotonicity == MONOTONE_QUBIT
        assert pre.to_dict()["guaranteed"] is True

    def test_higher_dimension_unknown(self, rng):
        povms = [random_povm(3, 2, rng), random_povm(3, 2, rng)]
        pre = pre_process_global(povms, random_channel(3, rng))
        assert not pre.guaranteed
        assert pre.monotonicity == MONOTONE_UNKNOWN

    def test_commutativity_preserved(self, rng, sigma_z, sigma_x):
        channel = random_channel(2, rng)
        assert commutativity_preserved(sigma_z, coin_flip_povm(2), channel)
        assert commutativity_preserved(sigma_z, sigma_x, channel)


class TestMonotonicitySuite:
    @pytest.mark.parametrize("kind", ["post_processing", "unitary", "depolarizing", "qubit_channel"])
    def test_proof_backed_suites_pass(self, kind):
        stats = monotonicity_suite(kind, trials=2, seed=3)
        assert stats.proof_backed
        assert stats.passed, [r.to_dict() for r in stats.failures]
        assert len(stats.records) == 2
        assert stats.min_margin >= -DEFAULT_TOLERANCES.monotonicity_margin

    def test_default_slack_from_tolerances(self):
        assert DEFAULT_TOLERANCES.monotonicity_margin == 1e-7
        strict = DEFAULT_TOLERANCES.with_overrides(monotonicity_margin=1e-12)
        stats = monotonicity_suite("post_processing", trials=1, seed=3, tolerances=strict)
        assert stats.records[0].ok == (stats.records[0].margin >= -1e-12)

    def test_global_channel_is_a_search(self):
        stats = monotonicity_suite("global_channel", trials=1, seed=3, dim=3)
        assert not stats.proof_backed
        assert stats.records[0].details["monotonicity"] == MONOTONE_UNKNOWN

    def test_records_reproducible(self):
        first = monotonicity_suite("unitary", trials=2, seed=8)
        second = monotonicity_suite("unitary", trials=2, seed=8)
        assert [r.seed for r in first.records] == [r.seed for r in second.records]
        assert first.to_dict()["min_margin"] == pytest.approx(second.min_margin, abs=1e-9)

    def test_invalid_arguments(self):
        with pytest.raises(ConfigError):
            monotonicity_suite("teleportation", trials=1)
        with pytest.raises(ConfigError):
            monotonicity_suite("unitary", trials=0)
        with pytest.raises(ConfigError):
            monotonicity_suite("qubit_channel", trials=1, povm_count=3)
