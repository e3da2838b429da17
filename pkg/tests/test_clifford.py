import numpy as np
import pytest

from qwass.clifford import (
    SIGMA_X,
    SIGMA_Z,
    adjoint_derivative,
    build_clifford,
    car_residual,
    derivative,
    dirichlet_form,
    divergence,
    expand,
    graded_fermionic_generator,
    gradient,
    grading,
    number_operator,
    plain_fermionic_generator,
    semigroup_apply,
    vector_inner,
)
from qwass.exceptions import ExpansionError, MatrixDomainError, SizeError
from qwass.models import OperatorVector


def random_element(rng, alg):
    coeffs = rng.standard_normal(alg.basis.size) + 1j * rng.standard_normal(alg.basis.size)
    return alg.synthesize(coeffs)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canonical_anticommutation(n):
    alg = build_clifford(n)
    assert car_residual(alg) <= 1e-12
    assert alg.dim == 2**n
    assert alg.basis.size == 2**n


@pytest.mark.parametrize("n", [0, 7])
def test_mode_count_is_bounded(n):
    with pytest.raises(SizeError):
        build_clifford(n)


def test_single_mode_generator_is_sigma_x(alg1):
    np.testing.assert_allclose(alg1.generators[0], SIGMA_X, atol=0)


def test_monomials_are_orthonormal(alg3):
    np.testing.assert_allclose(alg3.basis.gram(), np.eye(8), atol=1e-12)
    traces = [np.trace(q).real / alg3.dim for q in alg3.monomials]
    np.testing.assert_allclose(traces, [1.0] + [0.0] * 7, atol=1e-14)


def test_expand_reconstructs(rng, alg2):
    a = random_element(rng, alg2)
    np.testing.assert_allclose(alg2.synthesize(expand(alg2, a)), a, atol=1e-12)


def test_expand_rejects_foreign_matrix(alg1):
    with pytest.raises(ExpansionError):
        expand(alg1, SIGMA_Z)


class TestGrading:
    def test_sign_on_single_mode(self, alg1):
        np.testing.assert_allclose(grading(alg1, SIGMA_X), -SIGMA_X, atol=1e-15)
        eye = np.eye(2)
        np.testing.assert_allclose(grading(alg1, eye), eye, atol=1e-15)

    def test_automorphism(self, rng, alg2):
        a, b = random_element(rng, alg2), random_element(rng, alg2)
        lhs = grading(alg2, a @ b)
        rhs = grading(alg2, a) @ grading(alg2, b)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10

    def test_involution(self, rng, alg3):
        a = random_element(rng, alg3)
        np.testing.assert_allclose(grading(alg3, grading(alg3, a)), a, atol=1e-12)


class TestCalculus:
    def test_derivative_of_identity_vanishes(self, alg2):
        for j in range(2):
            np.testing.assert_allclose(derivative(alg2, j, alg2.identity), 0, atol=1e-15)

    def test_derivative_of_generator(self, alg1):
        # (Q Q - Gamma(Q) Q) / 2 = (id + id) / 2
        np.testing.assert_allclose(derivative(alg1, 0, SIGMA_X), np.eye(2), atol=1e-15)

    def test_divergence_is_minus_adjoint(self, rng, alg2):
        a = random_element(rng, alg2)
        b = OperatorVector(components=[random_element(rng, alg2) for _ in range(2)])
        lhs = vector_inner(alg2, gradient(alg2, a), b)
        rhs = alg2.basis.inner(a, divergence(alg2, b))
        assert abs(lhs + rhs) <= 1e-10 * max(1.0, abs(lhs))

    def test_adjoint_derivative_pairing(self, rng, alg2):
        a, b = random_element(rng, alg2), random_element(rng, alg2)
        for j in range(2):
            lhs = alg2.basis.inner(derivative(alg2, j, a), b)
            rhs = alg2.basis.inner(a, adjoint_derivative(alg2, j, b))
            assert lhs == pytest.approx(rhs, abs=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_number_operator_counts_degree(self, n):
        alg = build_clifford(n)
        for alpha, q in zip(alg.alphas, alg.monomials):
            np.testing.assert_allclose(number_operator(alg, q), sum(alpha) * q, atol=1e-12)

    def test_dirichlet_form_is_number_operator_pairing(self, rng, alg2):
        a, b = random_element(rng, alg2), random_element(rng, alg2)
        expected = alg2.basis.inner(a, number_operator(alg2, b))
        assert dirichlet_form(alg2, a, b) == pytest.approx(expected, abs=1e-10)


class TestGenerators:
    def test_graded_generator_is_minus_four_number(self, rng, alg3):
        a = random_element(rng, alg3)
        np.testing.assert_allclose(graded_fermionic_generator(alg3, a), -4.0 * number_operator(alg3, a), atol=1e-10)

    def test_plain_generator_on_single_mode(self, alg1):
        np.testing.assert_allclose(plain_fermionic_generator(alg1, SIGMA_X), 0, atol=1e-15)
        np.testing.assert_allclose(plain_fermionic_generator(alg1, SIGMA_Z), -4.0 * SIGMA_Z, atol=1e-15)

    def test_semigroup_damps_by_degree(self, alg2):
        q = alg2.monomial((1, 1))
        np.testing.assert_allclose(semigroup_apply(alg2, 0.5, q), np.exp(-1.0) * q, atol=1e-14)
        np.testing.assert_allclose(semigroup_apply(alg2, 3.0, alg2.identity), alg2.identity, atol=1e-14)

    def test_semigroup_rejects_negative_time(self, alg1):
        with pytest.raises(MatrixDomainError):
            semigroup_apply(alg1, -1.0, np.eye(2))
