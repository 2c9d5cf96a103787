import numpy as np
import pytest

from qmat import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    DensityMatrix,
    HermMatrix,
    commutator_norm,
    direct_sum,
    ket,
    kron,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    operator_from_json,
    parse_scalar,
    partial_trace_2,
    random_density,
    random_hermitian,
    random_unitary,
    span_membership,
    sqrtm_psd,
)
from utils.errors import DimensionMismatchError, HermiticityError, InputParseError


class TestHermMatrix:
    def test_symmetrizes_small_deviation(self):
        """Inputs within tolerance are stored exactly Hermitian"""
        m = HermMatrix(np.array([[1.0, 1e-12], [0.0, 2.0]]))
        np.testing.assert_array_equal(m.data, m.data.conj().T)

    def test_rejects_non_hermitian(self):
        """A deviation above the tolerance raises"""
        with pytest.raises(HermiticityError):
            HermMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            HermMatrix(np.zeros((2, 3)))

    def test_read_only(self):
        m = HermMatrix(PAULI_X)
        with pytest.raises(ValueError):
            m.data[0, 0] = 5.0

    def test_arithmetic_and_trace(self):
        a, b = HermMatrix(PAULI_Z), HermMatrix.identity(2)
        assert (a + b).trace() == pytest.approx(2.0)
        assert (2 * a - b).allclose(np.diag([1.0, -3.0]))

    def test_eigenvalues(self):
        m = HermMatrix(PAULI_Y)
        assert m.min_eigenvalue() == pytest.approx(-1.0)
        assert m.max_eigenvalue() == pytest.approx(1.0)

    def test_projector_normalizes(self):
        p = HermMatrix.projector([1.0, 1.0])
        np.testing.assert_allclose(p.data @ p.data, p.data, atol=1e-12)
        assert p.trace() == pytest.approx(1.0)


class TestDensityMatrix:
    def test_maximally_mixed(self):
        rho = DensityMatrix.maximally_mixed(3)
        np.testing.assert_allclose(rho.data, np.eye(3) / 3)

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(2))

    def test_subnormalized_accepted(self):
        rho = DensityMatrix(0.5 * np.diag([1.0, 0.0]), subnormalized=True)
        assert rho.mat.trace() == pytest.approx(0.5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_random_density_is_state(self, rng):
        rho = random_density(4, rng)
        assert rho.mat.trace() == pytest.approx(1.0)
        assert rho.mat.min_eigenvalue() > -1e-12


class TestLinalg:
    def test_pauli_commutator_norm(self):
        """||[X, Z]|| = ||-2iY|| = 2"""
        assert commutator_norm(PAULI_X, PAULI_Z) == pytest.approx(2.0)
        assert commutator_norm(PAULI_Z, PAULI_I) == pytest.approx(0.0)

    def test_op_norm(self):
        assert op_norm(np.diag([0.5, -3.0])) == pytest.approx(3.0)

    def test_direct_sum(self):
        m = direct_sum(np.eye(2), PAULI_X)
        assert m.dim == 4
        np.testing.assert_allclose(m.data[2:, 2:], PAULI_X)
        np.testing.assert_allclose(m.data[:2, 2:], 0.0)

    def test_partial_trace_of_product(self):
        a = np.diag([0.25, 0.75])
        b = np.eye(3) / 3
        reduced = partial_trace_2(kron(a, b), 2, 3)
        np.testing.assert_allclose(reduced.data, a, atol=1e-12)

    def test_partial_trace_shape_check(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace_2(np.eye(4), 3, 2)

    def test_sqrtm_psd(self, rng):
        x = random_hermitian(3, rng)
        pos = x.data @ x.data
        root = sqrtm_psd(pos)
        np.testing.assert_allclose(root @ root, pos, atol=1e-10)

    def test_span_membership(self):
        assert span_membership(PAULI_I, [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]).member
        result = span_membership(PAULI_X, [PAULI_I, PAULI_Z])
        assert not result.member
        assert result.residual > 1.0

    def test_random_unitary(self, rng):
        u = random_unitary(4, rng)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)

    def test_ket(self):
        np.testing.assert_array_equal(ket(1, 3), [0, 1, 0])


class TestCodec:
    def test_parse_exact_literals(self):
        assert parse_scalar("1/3").real == pytest.approx(1 / 3, abs=1e-15)
        assert parse_scalar("-sqrt(10)/10").real == pytest.approx(-np.sqrt(10) / 10, abs=1e-15)
        assert parse_scalar("I/2") == pytest.approx(0.5j)
        assert parse_scalar(2) == 2

    @pytest.mark.parametrize("literal", ["__import__('os')", "x + 1", ""])
    def test_parse_rejects(self, literal):
        with pytest.raises(InputParseError):
            parse_scalar(literal)

    def test_rejects_boolean(self):
        with pytest.raises(InputParseError):
            parse_scalar(True)

    def test_matrix_from_json(self):
        doc = {"dim": 2, "re": [["1/2", 0], [0, "1/2"]], "im": [[0, "1/4"], ["-1/4", 0]]}
        m = matrix_from_json(doc)
        np.testing.assert_allclose(m.data, [[0.5, 0.25j], [-0.25j, 0.5]])

    def test_error_location(self):
        doc = {"dim": 2, "re": [[1, 0], [0, "oops"]]}
        with pytest.raises(InputParseError) as info:
            matrix_from_json(doc, "$.elements[1]")
        assert info.value.location == "$.elements[1].re[1][1]"

    def test_non_hermitian_rejected(self):
        with pytest.raises(InputParseError):
            matrix_from_json({"dim": 2, "re": [[0, 1], [0, 0]]})

    def test_operator_accepts_non_hermitian(self):
        op = operator_from_json({"dim": 2, "re": [[0, 1], [0, 0]]})
        np.testing.assert_array_equal(op, [[0, 1], [0, 0]])

    def test_to_json_inverse(self):
        m = HermMatrix(PAULI_Y)
        np.testing.assert_allclose(matrix_from_json(matrix_to_json(m)).data, PAULI_Y)
