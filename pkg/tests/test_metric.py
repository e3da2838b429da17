import numpy as np
import pytest

from qwass.clifford import SIGMA_X
from qwass.exceptions import DomainExitError, InvariantViolationError, PreconditionError
from qwass.lindblad import Multiplication, laplacian_apply, laplacian_build
from qwass.metric import (
    MODEL_REGISTRY,
    CallableDensityModel,
    DepolarizingModel,
    FermionicQubitModel,
    artanh_ratio,
    depolarizing_info_closed_form,
    depolarizing_info_printed_form,
    depolarizing_laplacian_block,
    fermionic_info_closed_form,
    get_model,
    info_matrix,
    model_derivative,
    path_action,
    pullback_metric,
    score_solve,
    state_metric,
    wasserstein_info_matrix,
)

FERMIONIC_GRID = [-0.99, -0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9, 0.99]
DEPOLARIZING_GRID = [0.1, 0.5, 1.0, 2.0]
# basis order is (id, Q01, Q10, Q11); the reference block lists Q10 first
DEPOLARIZING_ORDER = [1, 0, 2]


class TestFermionicInfoMatrix:
    @pytest.mark.parametrize("theta", FERMIONIC_GRID)
    def test_kubo_mori_matches_closed_form(self, theta):
        model = FermionicQubitModel()
        g = info_matrix(model, [theta])
        assert g.shape == (1, 1)
        expected = np.arctanh(theta) / theta if theta else 1.0
        assert abs(g[0, 0] - expected) <= 1e-8

    @pytest.mark.parametrize("theta", FERMIONIC_GRID)
    def test_anticommutator_is_flat(self, theta):
        model = FermionicQubitModel(Multiplication.ANTICOMMUTATOR)
        assert info_matrix(model, [theta])[0, 0] == pytest.approx(1.0, abs=1e-10)

    def test_reports_theta_and_closed_form(self):
        model = FermionicQubitModel()
        result = wasserstein_info_matrix(model, 0.5)
        np.testing.assert_allclose(result.theta, [0.5])
        assert model.has_closed_form
        np.testing.assert_allclose(result.matrix, model.closed_form([0.5]), atol=1e-8)

    def test_reparametrization_scales_metric(self):
        model = FermionicQubitModel(G_theta=np.array([[2.0]]))
        expected = 4.0 * fermionic_info_closed_form(0.3)
        assert info_matrix(model, [0.3])[0, 0] == pytest.approx(expected, abs=1e-8)

    def test_outside_domain(self):
        with pytest.raises(DomainExitError):
            info_matrix(FermionicQubitModel(), [1.0])


class TestDepolarizing:
    @pytest.mark.parametrize("theta", DEPOLARIZING_GRID)
    def test_laplacian_block(self, theta):
        model = DepolarizingModel()
        lap = laplacian_build(model.state([theta]).matrix, model.structure)
        block = lap.restricted_block()[np.ix_(DEPOLARIZING_ORDER, DEPOLARIZING_ORDER)]
        assert np.max(np.abs(block - depolarizing_laplacian_block(theta))) <= 1e-12

    @pytest.mark.parametrize("theta", DEPOLARIZING_GRID)
    def test_info_matrix_matches_closed_form(self, theta):
        model = DepolarizingModel()
        assert info_matrix(model, [theta])[0, 0] == pytest.approx(depolarizing_info_closed_form(theta), abs=1e-8)

    def test_reference_values(self):
        assert depolarizing_info_closed_form(1.0) == pytest.approx(0.181522, abs=1e-6)
        assert depolarizing_info_closed_form(1e-8) == pytest.approx(1.5, abs=1e-6)
        assert depolarizing_info_printed_form(1.0) == pytest.approx(0.197281, abs=1e-6)

    def test_state_keeps_half_trace(self):
        state = DepolarizingModel().state([0.7])
        assert state.mass == pytest.approx(0.5)

    def test_non_positive_parameter(self):
        with pytest.raises(DomainExitError):
            DepolarizingModel().state([0.0])

    def test_finite_differences_match_analytic_derivative(self):
        model = DepolarizingModel()
        numeric = CallableDensityModel(
            state_fn=lambda theta: model._matrix(float(theta[0])),
            structure=model.structure,
            dim_params=1,
            domain_fn=lambda theta: theta[0] > 0,
            mass=0.5,
        )
        for theta in DEPOLARIZING_GRID:
            fd = model_derivative(numeric, [theta])[0].matrix
            exact = model_derivative(model, [theta])[0].matrix
            assert np.max(np.abs(fd - exact)) <= 1e-8
            assert info_matrix(numeric, [theta])[0, 0] == pytest.approx(info_matrix(model, [theta])[0, 0], abs=1e-7)


class TestScoreAndPullback:
    def test_score_solve_inverts_laplacian(self):
        model = FermionicQubitModel()
        rho = model.state([0.4]).matrix
        phi = score_solve(rho, SIGMA_X, model.structure)
        np.testing.assert_allclose(laplacian_apply(model.structure, rho, phi.matrix), SIGMA_X, atol=1e-10)
        assert abs(np.trace(phi.matrix)) <= 1e-12

    def test_score_target_must_be_traceless(self):
        model = FermionicQubitModel()
        with pytest.raises(PreconditionError):
            score_solve(model.state([0.4]).matrix, np.eye(2), model.structure)

    @pytest.mark.parametrize("theta", [-0.6, 0.2, 0.8])
    def test_pullback_agrees_with_state_metric(self, theta):
        model = FermionicQubitModel()
        rho = model.state([theta]).matrix
        tangent = model_derivative(model, [theta])[0].matrix
        direct = state_metric(rho, tangent, tangent, model.structure)
        assert pullback_metric(model, [theta], [1.0], [1.0]) == pytest.approx(direct, abs=1e-10)
        assert direct == pytest.approx(fermionic_info_closed_form(theta), abs=1e-8)

    def test_pullback_is_bilinear(self):
        model = FermionicQubitModel()
        base = pullback_metric(model, [0.3], [1.0], [1.0])
        assert pullback_metric(model, [0.3], [2.0], [-3.0]) == pytest.approx(-6.0 * base, rel=1e-12)


class TestPathAction:
    def test_flat_straight_line(self):
        model = FermionicQubitModel(Multiplication.ANTICOMMUTATOR)
        path = np.linspace(-0.5, 0.5, 41)
        assert path_action(model, path) == pytest.approx(1.0, abs=1e-10)

    def test_constant_path_has_no_action(self):
        assert path_action(FermionicQubitModel(), [0.2] * 5) == 0.0

    def test_needs_two_points(self):
        with pytest.raises(InvariantViolationError):
            path_action(FermionicQubitModel(), [0.1])

    def test_reports_offending_step(self):
        with pytest.raises(DomainExitError) as info:
            path_action(FermionicQubitModel(), [0.1, 0.5, 1.2])
        assert info.value.step_index == 2


class TestClosedForms:
    def test_artanh_ratio_series_branch(self):
        t = 1e-5
        assert artanh_ratio(t) == pytest.approx(1.0 + t * t / 3.0, rel=1e-15)

    def test_artanh_ratio_is_continuous_at_threshold(self):
        assert artanh_ratio(0.99999e-4) == pytest.approx(artanh_ratio(1.00001e-4), abs=1e-12)

    def test_artanh_ratio_domain(self):
        with pytest.raises(DomainExitError):
            artanh_ratio(-1.0)

    def test_anticommutator_closed_form(self):
        assert fermionic_info_closed_form(0.7, Multiplication.ANTICOMMUTATOR) == 1.0


class TestRegistry:
    def test_known_names(self):
        assert set(MODEL_REGISTRY) == {"fermionic-n1", "fermionic-n1-ac", "depolarizing-n2", "gaussian"}
        assert get_model("fermionic-n1-ac").multiplication is Multiplication.ANTICOMMUTATOR
        assert get_model("gaussian").dim_params == 5

    def test_unknown_name_lists_known_models(self):
        with pytest.raises(KeyError, match="fermionic-n1"):
            get_model("bosonic")
