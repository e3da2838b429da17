import numpy as np
import pytest
from scipy.special import spence

from qwass.clifford import SIGMA_X
from qwass.exceptions import FaithfulnessError
from qwass.flows import (
    analytic_fermionic_geodesic,
    bridge_functional,
    dilog,
    dilogarithm_curve,
    dilogarithm_curve_action,
    entropy_objective,
    eta,
    eta_inverse,
    euler_lagrange_residual,
    geodesic_bvp,
    geodesic_distance_closed_form,
    geodesic_ivp,
    hamiltonian,
    natural_gradient_direction,
    natural_gradient_flow,
    numeric_gradient,
    sbp_beta_sweep,
    sbp_equivalence_check,
    sbp_solve,
    sbp_solve_parametric,
    state_space_gradient_step,
    zeta_fn,
    zeta_inverse,
)
from qwass.lindblad import Multiplication, fermionic_structure
from qwass.metric import FermionicQubitModel, fermionic_info_closed_form
from qwass.models import BridgePath, DensityOperator, OptimizerMode, TraceConvention


def fermionic_density(theta: float) -> DensityOperator:
    return DensityOperator.from_matrix(np.eye(2) + theta * SIGMA_X, TraceConvention.NORMALIZED)


def straight_bridge(theta0: float, theta1: float, n_steps: int, beta: float) -> BridgePath:
    thetas = np.linspace(theta0, theta1, n_steps + 1)
    return BridgePath(states=[fermionic_density(t) for t in thetas], beta=beta, functional_value=0.0)


class TestNaturalGradient:
    @pytest.mark.parametrize("theta", [-0.8, -0.2, 0.4, 0.95])
    def test_entropy_direction_is_theta(self, theta):
        model = FermionicQubitModel()
        direction = natural_gradient_direction(model, np.array([theta]), np.array([np.arctanh(theta)]))
        assert direction[0] == pytest.approx(theta, abs=1e-8)

    def test_numeric_gradient_of_entropy(self):
        model = FermionicQubitModel()
        grad = numeric_gradient(model, entropy_objective(model), np.array([0.6]))
        assert grad[0] == pytest.approx(np.arctanh(0.6), abs=1e-7)

    def test_numeric_gradient_near_the_boundary(self):
        model = FermionicQubitModel()
        # the default stencil crosses the margin and has to be halved once
        theta = 1.0 - 1.5 * model.margin
        grad = numeric_gradient(model, entropy_objective(model), np.array([theta]))
        assert grad[0] == pytest.approx(np.arctanh(theta), rel=1e-2)

    def test_euler_error_is_first_order(self):
        model = FermionicQubitModel()
        objective = entropy_objective(model)
        exact = 0.5 * np.exp(-1.0)
        errors = []
        for tau, n_steps in [(0.1, 10), (0.05, 20)]:
            result = natural_gradient_flow(model, [0.5], objective, tau, n_steps)
            assert result.times[-1] == pytest.approx(1.0)
            errors.append(abs(result.final[0] - exact))
        assert errors[0] / errors[1] == pytest.approx(2.0, abs=0.2)

    def test_entropy_decreases_along_flow(self):
        model = FermionicQubitModel()
        result = natural_gradient_flow(model, [-0.9], entropy_objective(model), 0.1, 15, gradient=np.arctanh)
        values = np.array(result.diagnostics["objective"])
        assert np.all(np.diff(values) < 0)
        assert abs(result.final[0]) < 0.9

    def test_zero_steps_returns_initial_point(self):
        model = FermionicQubitModel()
        result = natural_gradient_flow(model, [0.3], entropy_objective(model), 0.1, 0)
        assert result.n_points == 1
        np.testing.assert_allclose(result.final, [0.3])

    def test_step_size_must_be_positive(self):
        model = FermionicQubitModel()
        with pytest.raises(ValueError):
            natural_gradient_flow(model, [0.3], entropy_objective(model), 0.0, 5)

    def test_state_space_step_matches_parametric_step(self, alg1):
        structure = fermionic_structure(alg1)
        rho = np.eye(2) + 0.6 * SIGMA_X
        stepped = state_space_gradient_step(structure, rho, 0.1)
        np.testing.assert_allclose(stepped, np.eye(2) + 0.6 * 0.9 * SIGMA_X, atol=1e-10)


class TestDilogarithm:
    def test_special_values(self):
        assert dilog(1.0) == pytest.approx(np.pi**2 / 6, abs=1e-12)
        assert dilog(-1.0) == pytest.approx(-(np.pi**2) / 12, abs=1e-12)
        assert dilog(0.5) == pytest.approx(np.pi**2 / 12 - np.log(2.0) ** 2 / 2, abs=1e-12)
        assert dilog(0.0) == 0.0

    def test_vectorized_keeps_shape(self):
        x = np.array([[-2.0, 0.3], [0.7, 0.9]])
        out = dilog(x)
        assert out.shape == x.shape
        assert out[0, 1] == pytest.approx(dilog(0.3))

    def test_inversion_branch_is_consistent(self):
        # Li2(x) + Li2(1/x) = -pi^2/6 - log(-x)^2 / 2 for x < 0
        x = -3.0
        assert dilog(x) + dilog(1.0 / x) == pytest.approx(-(np.pi**2) / 6 - 0.5 * np.log(3.0) ** 2, abs=1e-12)

    def test_matches_scipy_spence(self):
        # scipy's spence(z) is Li2(1 - z)
        x = np.linspace(-5.0, 0.999, 37)
        np.testing.assert_allclose(dilog(x), spence(1.0 - x), rtol=1e-12, atol=1e-14)

    def test_zeta_derivative_and_inverse(self):
        x, h = 0.7, 1e-5
        slope = (zeta_fn(x + h) - zeta_fn(x - h)) / (2 * h)
        assert slope == pytest.approx(np.arctanh(x) / x, abs=1e-8)
        assert zeta_inverse(zeta_fn(x)) == pytest.approx(x, abs=1e-10)
        assert zeta_fn(-x) == pytest.approx(-zeta_fn(x), abs=1e-15)

    def test_eta_inverse(self):
        for x in [-0.95, -0.3, 0.0, 0.4, 0.99]:
            assert eta_inverse(eta(x)) == pytest.approx(x, abs=1e-10)

    def test_geodesic_endpoints(self):
        assert analytic_fermionic_geodesic(-0.3, 0.6, 0.0) == -0.3
        assert analytic_fermionic_geodesic(-0.3, 0.6, 1.0) == 0.6
        values = analytic_fermionic_geodesic(-0.3, 0.6, np.linspace(0, 1, 5))
        assert np.all(np.diff(values) > 0)

    def test_dilogarithm_curve_costs_more_than_geodesic(self):
        assert dilogarithm_curve_action(-0.5, 0.8) > geodesic_distance_closed_form(-0.5, 0.8) ** 2
        midpoint = dilogarithm_curve(-0.5, 0.8, 0.5)
        assert midpoint == pytest.approx(zeta_inverse(0.5 * (zeta_fn(-0.5) + zeta_fn(0.8))), abs=1e-12)


class TestGeodesicBVP:
    def test_matches_analytic_geodesic(self):
        model = FermionicQubitModel()
        result = geodesic_bvp(model, -0.5, 0.5, 100)
        reference = analytic_fermionic_geodesic(-0.5, 0.5, result.times)
        assert np.max(np.abs(result.thetas[:, 0] - reference)) <= 1e-3
        assert result.diagnostics["path_action"][0] == pytest.approx(
            geodesic_distance_closed_form(-0.5, 0.5) ** 2, rel=5e-3
        )

    def test_flat_metric_gives_straight_line(self):
        model = FermionicQubitModel(Multiplication.ANTICOMMUTATOR)
        result = geodesic_bvp(model, -0.5, 0.5, 20)
        np.testing.assert_allclose(result.thetas[:, 0], np.linspace(-0.5, 0.5, 21), atol=1e-6)

    def test_monte_carlo_is_reproducible(self):
        model = FermionicQubitModel()
        first = geodesic_bvp(model, 0.0, 0.8, 8, mode=OptimizerMode.MC, seed=7)
        second = geodesic_bvp(model, 0.0, 0.8, 8, mode=OptimizerMode.MC, seed=7)
        np.testing.assert_array_equal(first.thetas, second.thetas)
        trace = np.array(first.diagnostics["objective"])
        assert np.all(np.diff(trace) <= 0)
        assert trace[-1] <= first.diagnostics["linear_objective"][0]

    def test_monte_carlo_needs_seed(self):
        with pytest.raises(ValueError):
            geodesic_bvp(FermionicQubitModel(), 0.0, 0.5, 4, mode=OptimizerMode.MC)

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            geodesic_bvp(FermionicQubitModel(), 0.0, 0.5, 4, rule="trapezoid")

    def test_euler_lagrange_residual(self):
        model = FermionicQubitModel()
        t = np.linspace(0.0, 1.0, 101)
        geodesic = analytic_fermionic_geodesic(-0.5, 0.5, t)
        assert np.max(np.abs(euler_lagrange_residual(model, geodesic))) <= 1e-3
        assert np.max(np.abs(euler_lagrange_residual(model, np.linspace(-0.5, 0.5, 101)))) > 0.1


class TestGeodesicIVP:
    def test_hamiltonian_is_conserved(self):
        model = FermionicQubitModel()
        result = geodesic_ivp(model, [0.2], [0.5], t_end=1.0, dt=1e-2)
        energies = np.array(result.diagnostics["hamiltonian"])
        assert energies[0] == pytest.approx(hamiltonian(model, [0.2], [0.5]))
        assert np.max(np.abs(energies - energies[0])) <= 1e-6
        assert not result.exited_domain

    def test_hamiltonian_value(self):
        model = FermionicQubitModel()
        expected = 0.5 * 0.25 / fermionic_info_closed_form(0.2)
        assert hamiltonian(model, [0.2], [0.5]) == pytest.approx(expected, abs=1e-10)

    def test_flat_metric_moves_in_a_straight_line(self):
        model = FermionicQubitModel(Multiplication.ANTICOMMUTATOR)
        result = geodesic_ivp(model, [-0.2], [0.5], t_end=1.0, dt=1e-2)
        np.testing.assert_allclose(result.thetas[:, 0], -0.2 + 0.5 * result.times, atol=1e-8)

    def test_shooting_reaches_target(self):
        model = FermionicQubitModel()
        theta0, theta1 = -0.5, 0.5
        momentum = np.sqrt(fermionic_info_closed_form(theta0)) * (eta(theta1) - eta(theta0))
        result = geodesic_ivp(model, [theta0], [momentum], t_end=1.0, dt=1e-2)
        assert result.final[0] == pytest.approx(theta1, abs=1e-4)

    def test_reversed_momentum_retraces_the_path(self):
        model = FermionicQubitModel()
        forward = geodesic_ivp(model, [0.3], [0.4], t_end=1.0, dt=1e-2)
        p_end = np.array(forward.diagnostics["final_momentum"])
        assert forward.diagnostics["momentum"][-1] == pytest.approx(np.linalg.norm(p_end))
        back = geodesic_ivp(model, forward.final, -p_end, t_end=1.0, dt=1e-2)
        assert back.final[0] == pytest.approx(0.3, abs=1e-6)
        np.testing.assert_allclose(back.thetas[::-1, 0], forward.thetas[:, 0], atol=1e-6)

    def test_domain_exit_truncates_trajectory(self):
        model = FermionicQubitModel()
        result = geodesic_ivp(model, [0.9], [5.0], t_end=1.0, dt=1e-2)
        assert result.exited_domain
        assert result.message
        assert result.times[-1] < 1.0
        assert all(model.in_domain(theta) for theta in result.thetas)


class TestBridge:
    def test_zero_beta_recovers_geodesic_distance(self, alg1):
        structure = fermionic_structure(alg1)
        path = sbp_solve(structure, fermionic_density(-0.5), fermionic_density(0.5), beta=0.0, n_steps=40)
        assert path.functional_value == pytest.approx(geodesic_distance_closed_form(-0.5, 0.5) ** 2, abs=1e-3)
        assert path.n_steps == 40
        assert bridge_functional(path, structure) == pytest.approx(path.functional_value, abs=1e-10)

    def test_state_space_and_parametric_bridges_agree(self, alg1):
        structure = fermionic_structure(alg1)
        free = sbp_solve(structure, fermionic_density(-0.4), fermionic_density(0.6), beta=0.3, n_steps=12)
        restricted = sbp_solve_parametric(FermionicQubitModel(), [-0.4], [0.6], beta=0.3, n_steps=12)
        assert free.functional_value == pytest.approx(restricted.functional_value, abs=1e-8)

    def test_refining_the_grid_changes_the_value_at_first_order(self, alg1):
        structure = fermionic_structure(alg1)
        rho_in, rho_fi = fermionic_density(-0.3), fermionic_density(0.3)
        coarse = sbp_solve(structure, rho_in, rho_fi, beta=0.2, n_steps=8)
        fine = sbp_solve(structure, rho_in, rho_fi, beta=0.2, n_steps=16)
        assert np.isfinite(coarse.functional_value) and np.isfinite(fine.functional_value)
        assert abs(coarse.functional_value - fine.functional_value) <= 0.05 * abs(fine.functional_value) + 1.0 / 8

    def test_entropic_cost_grows_with_beta(self, alg1):
        structure = fermionic_structure(alg1)
        paths = sbp_beta_sweep(
            structure, fermionic_density(-0.4), fermionic_density(0.4), [0.0, 0.5], n_steps=8, max_workers=2
        )
        assert [p.beta for p in paths] == [0.0, 0.5]
        assert paths[1].functional_value > paths[0].functional_value

    def test_non_faithful_endpoint(self, alg1):
        structure = fermionic_structure(alg1)
        with pytest.raises(FaithfulnessError) as info:
            sbp_solve(structure, fermionic_density(-1.0), fermionic_density(0.5), beta=0.0, n_steps=4)
        assert info.value.step_index == 0

    def test_negative_beta(self, alg1):
        structure = fermionic_structure(alg1)
        with pytest.raises(ValueError):
            sbp_solve(structure, fermionic_density(-0.5), fermionic_density(0.5), beta=-0.1, n_steps=4)


class TestEquivalence:
    def test_exact_without_entropy(self, alg1):
        structure = fermionic_structure(alg1)
        report = sbp_equivalence_check(straight_bridge(-0.5, 0.5, 20, 0.0), structure)
        assert abs(report.lhs - report.rhs) <= 1e-12
        assert report.cross_term == 0.0

    @pytest.mark.parametrize("bend", [0.0, 0.1, -0.15])
    def test_left_scheme_is_first_order(self, alg1, bend):
        structure = fermionic_structure(alg1)

        def bent_bridge(n):
            t = np.linspace(0.0, 1.0, n + 1)
            thetas = -0.5 + t + bend * np.sin(np.pi * t)
            return BridgePath(states=[fermionic_density(x) for x in thetas], beta=0.2, functional_value=0.0)

        residuals = [sbp_equivalence_check(bent_bridge(n), structure).residual for n in (50, 100)]
        assert residuals[0] / residuals[1] == pytest.approx(2.0, abs=0.3)

    def test_midpoint_scheme_is_more_accurate(self, alg1):
        structure = fermionic_structure(alg1)
        path = straight_bridge(-0.5, 0.5, 50, 0.2)
        left = sbp_equivalence_check(path, structure, scheme="left")
        midpoint = sbp_equivalence_check(path, structure, scheme="midpoint")
        assert midpoint.residual < 0.1 * left.residual
        assert midpoint.entropy_difference == pytest.approx(0.0, abs=1e-14)

    def test_unknown_scheme(self, alg1):
        with pytest.raises(ValueError):
            sbp_equivalence_check(straight_bridge(-0.5, 0.5, 4, 0.2), fermionic_structure(alg1), scheme="right")
