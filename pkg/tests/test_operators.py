import numpy as np
import pytest
from scipy.linalg import logm, solve_continuous_lyapunov

from qwass.exceptions import (
    ErgodicityError,
    ExpansionError,
    FaithfulnessError,
    InvariantViolationError,
    MatrixDomainError,
)
from qwass.models import DensityOperator, HermitianOperator, TraceConvention
from qwass.operators import (
    anticommutator_apply,
    eigh,
    hermitian_basis,
    kubo_mori_apply,
    kubo_mori_inverse_quadrature,
    kubo_mori_quadrature,
    log_mean,
    lyapunov_solve,
    matrix_function,
    superop_build,
    superop_build_and_pinv,
    trace_norm,
)

from conftest import random_hermitian, random_state


class TestOperatorTypes:
    def test_non_hermitian_matrix_is_rejected(self):
        with pytest.raises(InvariantViolationError):
            HermitianOperator(matrix=np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_non_square_matrix_is_rejected(self):
        with pytest.raises(InvariantViolationError):
            HermitianOperator(matrix=np.zeros((2, 3)))

    def test_density_trace_under_each_convention(self):
        eye = np.eye(2)
        DensityOperator.from_matrix(eye, TraceConvention.NORMALIZED)
        DensityOperator.from_matrix(eye / 2, TraceConvention.STANDARD)
        with pytest.raises(InvariantViolationError):
            DensityOperator.from_matrix(eye, TraceConvention.STANDARD)

    def test_negative_eigenvalue_is_rejected(self):
        with pytest.raises(InvariantViolationError):
            DensityOperator.from_matrix(np.diag([1.5, -0.5]), TraceConvention.STANDARD)

    def test_operator_json_form(self, rng):
        h = random_hermitian(rng, 3)
        op = HermitianOperator(matrix=h)
        again = HermitianOperator.from_dict(op.to_dict())
        np.testing.assert_allclose(again.matrix, h, atol=0)


class TestSpectral:
    def test_eigh_reconstructs_input(self, rng):
        h = random_hermitian(rng, 4)
        spectrum = eigh(h)
        assert np.all(np.diff(spectrum.values) >= 0)
        err = np.max(np.abs(spectrum.reconstruct() - h))
        assert err <= 1e-12 * np.linalg.norm(h, 2)

    def test_log_matches_scipy(self, rng):
        rho = random_state(rng, 4)
        np.testing.assert_allclose(matrix_function(rho, "log").matrix, logm(rho), atol=1e-10)

    def test_log_of_singular_operator_names_eigenvalue(self):
        with pytest.raises(MatrixDomainError) as info:
            matrix_function(np.diag([1.0, 0.0]), "log")
        assert info.value.eigenvalue == 0.0

    def test_fractional_power_of_indefinite_operator(self):
        with pytest.raises(MatrixDomainError):
            matrix_function(np.diag([1.0, -0.5]), "pow", 0.5)

    def test_integer_power_and_exp(self, rng):
        h = random_hermitian(rng, 3)
        np.testing.assert_allclose(matrix_function(h, "pow", 2).matrix, h @ h, atol=1e-12)
        values, vectors = np.linalg.eigh(h)
        expected = (vectors * np.exp(0.3 * values)) @ vectors.conj().T
        np.testing.assert_allclose(matrix_function(h, "exp", 0.3).matrix, expected, atol=1e-12)

    def test_unknown_function(self):
        with pytest.raises(ValueError):
            matrix_function(np.eye(2), "sqrtm")

    def test_trace_norm_of_pauli_z(self):
        assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0)


class TestLogMean:
    def test_coincidence_limit(self):
        a = np.array([0.3, 2.0])
        np.testing.assert_allclose(log_mean(a, a), a, rtol=1e-15)

    def test_generic_values(self):
        assert log_mean(np.array([2.0]), np.array([1.0]))[0] == pytest.approx(1.0 / np.log(2.0), rel=1e-14)

    def test_nearly_coincident_is_continuous(self):
        a = np.array([1.0])
        b = np.array([1.0 + 1e-13])
        assert log_mean(a, b)[0] == pytest.approx(1.0, abs=1e-12)

    def test_zero_argument(self):
        assert log_mean(np.array([0.0]), np.array([1.0]))[0] == 0.0


class TestKuboMori:
    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_matches_quadrature(self, rng, dim):
        for _ in range(20):
            rho1, rho2 = random_state(rng, dim), random_state(rng, dim)
            t = random_hermitian(rng, dim)
            fast = kubo_mori_apply(rho1, rho2, t)
            oracle = kubo_mori_quadrature(rho1, rho2, t, nodes=64)
            assert np.max(np.abs(fast - oracle)) <= 1e-8

    def test_inverse_matches_resolvent_integral(self, rng):
        rho1, rho2 = random_state(rng, 3), random_state(rng, 3)
        t = random_hermitian(rng, 3)
        fast = kubo_mori_apply(rho1, rho2, t, inverse=True)
        oracle = kubo_mori_inverse_quadrature(rho1, rho2, t)
        np.testing.assert_allclose(fast, oracle, atol=1e-8)

    def test_forward_after_inverse_is_identity(self, rng):
        rho1, rho2 = random_state(rng, 4), random_state(rng, 4)
        t = random_hermitian(rng, 4)
        back = kubo_mori_apply(rho1, rho2, kubo_mori_apply(rho1, rho2, t, inverse=True))
        assert np.max(np.abs(back - t)) <= 1e-10 * max(1.0, np.max(np.abs(t)))

    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_trace_norm_is_bounded_by_operator_norm(self, rng, dim):
        # Hölder: ||int rho1^(1-s) T rho2^s ds||_1 <= ||T||_inf for unit-trace states
        for _ in range(50):
            rho1, rho2 = random_state(rng, dim), random_state(rng, dim)
            t = random_hermitian(rng, dim)
            assert trace_norm(kubo_mori_apply(rho1, rho2, t)) <= np.linalg.norm(t, 2) * (1.0 + 1e-12)

    def test_commuting_case_is_plain_product(self):
        rho = np.diag([0.2, 0.8])
        t = np.eye(2)
        np.testing.assert_allclose(kubo_mori_apply(rho, rho, t), rho, atol=1e-15)

    def test_inverse_needs_faithful_state(self):
        rho = np.diag([1.0, 0.0])
        with pytest.raises(FaithfulnessError) as info:
            kubo_mori_apply(rho, rho, np.eye(2), inverse=True)
        assert info.value.min_eigenvalue == 0.0


class TestAnticommutator:
    def test_round_trip(self, rng):
        rho = random_state(rng, 4)
        t = random_hermitian(rng, 4)
        x = anticommutator_apply(rho, t, inverse=True)
        residual = np.max(np.abs(0.5 * (x @ rho + rho @ x) - t))
        assert residual <= 1e-10 * np.linalg.norm(t, 2)
        np.testing.assert_allclose(anticommutator_apply(rho, x), t, atol=1e-10)

    def test_inverse_needs_faithful_state(self):
        with pytest.raises(FaithfulnessError):
            anticommutator_apply(np.diag([1.0, 0.0]), np.eye(2), inverse=True)


class TestLyapunov:
    def test_gaussian_example_covariances(self):
        sigma0 = np.array([[1.0, 0.5], [0.5, 1.0]])
        sigma1 = np.array([[2.0, 0.3], [0.3, 1.5]])
        q = sigma1 - sigma0
        s = lyapunov_solve(sigma0, q)
        assert np.max(np.abs(s @ sigma0 + sigma0 @ s - q)) <= 1e-10 * np.linalg.norm(q, 2)
        np.testing.assert_allclose(s, s.T, atol=1e-15)

    def test_agrees_with_scipy(self, rng):
        a = rng.standard_normal((4, 4))
        sigma = a @ a.T + np.eye(4)
        q = rng.standard_normal((4, 4))
        q = q + q.T
        np.testing.assert_allclose(lyapunov_solve(sigma, q), solve_continuous_lyapunov(sigma, q), atol=1e-10)

    def test_indefinite_coefficient(self):
        with pytest.raises(MatrixDomainError):
            lyapunov_solve(np.diag([1.0, -1.0]), np.eye(2))


class TestSuperoperators:
    def test_hermitian_basis_is_orthonormal(self):
        basis = hermitian_basis(3, TraceConvention.STANDARD)
        assert basis.size == 9
        np.testing.assert_allclose(basis.gram(), np.eye(9), atol=1e-12)
        for e in basis.elements:
            np.testing.assert_allclose(e, e.conj().T, atol=0)

    def test_coefficients_outside_real_span(self):
        basis = hermitian_basis(2)
        with pytest.raises(ExpansionError):
            basis.coefficients(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_matrix_application_matches_map(self, rng):
        basis = hermitian_basis(3)
        rho = random_state(rng, 3)
        linear_map = lambda a: rho @ a + a @ rho  # noqa: E731
        superop = superop_build(linear_map, basis)
        a = random_hermitian(rng, 3)
        np.testing.assert_allclose(superop.apply(a), linear_map(a), atol=1e-10)

    def test_pseudo_inverse_projects_off_kernel(self, rng):
        basis = hermitian_basis(2)
        n = basis.size
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        values = np.array([0.0, 1.0, 2.5, 4.0])
        matrix = q @ np.diag(values) @ q.T
        superop = superop_build_and_pinv(None, basis, kernel_vectors=[q[:, 0]], matrix=matrix)
        projector = np.eye(n) - np.outer(q[:, 0], q[:, 0])
        np.testing.assert_allclose(superop.pinv @ superop.matrix, projector, atol=1e-9)
        assert superop.kernel_dim == 1

    def test_kernel_mismatch_is_reported(self):
        basis = hermitian_basis(2)
        matrix = np.diag([0.0, 0.0, 1.0, 1.0])
        with pytest.raises(ErgodicityError) as info:
            superop_build_and_pinv(None, basis, kernel_vectors=[np.eye(4)[0]], matrix=matrix)
        assert info.value.detected == 2
        assert info.value.declared == 1
