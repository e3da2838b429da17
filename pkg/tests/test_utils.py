import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from qwass.exceptions import AdmissibilityError, DomainExitError, InvariantViolationError
from qwass.lindblad import validate_generator
from qwass.models import HermitianOperator, OptimizerMode, RunConfig
from qwass.settings import NUM_THREADS_ENV, NumericSettings, resolve_num_threads
from qwass.utils import (
    PathProblem,
    atomic_write_text,
    generator_from_dict,
    lbfgs_path,
    load_gaussian,
    load_generator,
    load_operator,
    load_run_config,
    monte_carlo_path,
    parallel_map,
    read_json,
    save_generator,
    save_operator,
    write_csv,
    write_json,
)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"

LOWERING = {"dim": 2, "re": [[0.0, 0.0], [1.0, 0.0]]}
SIGMA = {"dim": 2, "re": [[0.3, 0.0], [0.0, 0.7]]}


class TestFiles:
    def test_atomic_write_creates_parents_and_leaves_no_temp_files(self, tmp_path):
        target = tmp_path / "nested" / "out.txt"
        atomic_write_text(target, "hello\n")
        assert target.read_text() == "hello\n"
        assert [p.name for p in target.parent.iterdir()] == ["out.txt"]

    def test_write_json_accepts_numpy_and_models(self, tmp_path):
        write_json(tmp_path / "a.json", {"x": np.arange(3), "y": np.float64(0.5)})
        assert read_json(tmp_path / "a.json") == {"x": [0, 1, 2], "y": 0.5}
        write_json(tmp_path / "settings.json", NumericSettings(seed=3))
        assert read_json(tmp_path / "settings.json")["seed"] == 3

    def test_csv_keeps_full_precision(self, tmp_path):
        path = write_csv(tmp_path / "values.csv", ["a", "b"], np.array([[0.1, 1.0 / 3.0]]))
        lines = path.read_text().splitlines()
        assert lines[0] == "a,b"
        a, b = (float(v) for v in lines[1].split(","))
        assert a == 0.1
        assert b == 1.0 / 3.0

    def test_csv_with_no_rows_has_header_only(self, tmp_path):
        path = write_csv(tmp_path / "empty.csv", ["theta_1", "G_11"], np.zeros((0, 2)))
        assert path.read_text() == "theta_1,G_11\n"

    def test_csv_column_mismatch(self, tmp_path):
        with pytest.raises(InvariantViolationError):
            write_csv(tmp_path / "bad.csv", ["a"], np.zeros((2, 2)))


class TestOperatorFiles:
    def test_operator_file(self, tmp_path, rng):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        op = HermitianOperator(matrix=a + a.conj().T)
        save_operator(tmp_path / "op.json", op)
        np.testing.assert_array_equal(load_operator(tmp_path / "op.json").matrix, op.matrix)

    def test_operator_file_shape_mismatch(self, tmp_path):
        (tmp_path / "op.json").write_text(json.dumps({"dim": 3, "re": [[1.0, 0.0], [0.0, 1.0]]}))
        with pytest.raises(InvariantViolationError):
            load_operator(tmp_path / "op.json")

    def test_generator_from_jumps_adds_partner(self):
        gen = generator_from_dict({"convention": "standard", "sigma": SIGMA, "jumps": [{"V": LOWERING, "omega": -0.8472978603872037}]})
        assert len(gen.terms) == 2
        assert gen.terms[1].omega == pytest.approx(0.8472978603872037)
        assert validate_generator(gen).valid

    def test_generator_from_terms_is_taken_as_given(self):
        gen = generator_from_dict(
            {
                "convention": "standard",
                "sigma": SIGMA,
                "terms": [{"V": LOWERING, "omega": 0.5, "adjoint": 0}],
            }
        )
        assert len(gen.terms) == 1
        assert not validate_generator(gen).valid

    def test_shipped_generator_and_round_trip(self, tmp_path):
        gen = load_generator(CONFIG_DIR / "damped_qubit_generator.json")
        assert gen.name == "damped-qubit"
        save_generator(tmp_path / "gen.json", gen)
        again = load_generator(tmp_path / "gen.json")
        assert len(again.terms) == len(gen.terms)
        np.testing.assert_allclose(again.sigma.matrix, gen.sigma.matrix)

    def test_gaussian_file(self, tmp_path):
        (tmp_path / "g.json").write_text(json.dumps({"Sigma": [[3.0, 0.0], [0.0, 3.0]], "mu": [1.0, 0.0]}))
        state = load_gaussian(tmp_path / "g.json")
        np.testing.assert_allclose(state.mu, [1.0, 0.0])
        (tmp_path / "bad.json").write_text(json.dumps({"Sigma": [[0.5, 0.0], [0.0, 0.5]]}))
        with pytest.raises(AdmissibilityError):
            load_gaussian(tmp_path / "bad.json")


class TestRunConfig:
    def test_flags_override_file(self, tmp_path):
        config = load_run_config(CONFIG_DIR / "geodesic_fermionic.json", {"N": 10, "seed": None, "out": str(tmp_path)})
        assert config.N == 10
        assert config.theta0 == [-0.9]
        assert config.seed is None
        assert config.out == str(tmp_path)

    def test_settings_are_merged_by_key(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"command": "flow", "settings": {"fd_rel_step": 1e-5, "max_iter": 7}}))
        config = load_run_config(path, {"settings": {"max_iter": 9, "seed": None}})
        assert config.settings.fd_rel_step == 1e-5
        assert config.settings.max_iter == 9

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(ValidationError):
            load_run_config(None, {"command": "flow", "temperature": 1.0})

    def test_monte_carlo_needs_seed(self):
        with pytest.raises(ValidationError):
            RunConfig(command="geodesic", mode=OptimizerMode.MC)

    def test_scalar_grid_points_are_wrapped(self):
        config = RunConfig(command="infomatrix", theta_grid=[0.1, [0.2], 0.3])
        assert config.theta_grid == [[0.1], [0.2], [0.3]]

    @pytest.mark.parametrize("name", sorted(p.name for p in CONFIG_DIR.glob("*.json") if p.name != "damped_qubit_generator.json"))
    def test_shipped_run_configs_parse(self, name):
        load_run_config(CONFIG_DIR / name, {})


class TestParallel:
    def test_results_keep_input_order(self):
        assert parallel_map(lambda x: x * x, list(range(20)), max_workers=4, show_progress=False) == [
            x * x for x in range(20)
        ]

    def test_first_failure_is_raised(self):
        def fn(x):
            if x == 3:
                raise DomainExitError("boom", last_valid=x)
            return x

        with pytest.raises(DomainExitError):
            parallel_map(fn, list(range(6)), max_workers=2, show_progress=False)

    def test_empty_input(self):
        assert parallel_map(lambda x: x, [], show_progress=False) == []

    def test_thread_count_from_environment(self, monkeypatch):
        monkeypatch.setenv(NUM_THREADS_ENV, "3")
        assert resolve_num_threads() == 3
        monkeypatch.setenv(NUM_THREADS_ENV, "0")
        assert resolve_num_threads() == 1
        monkeypatch.setenv(NUM_THREADS_ENV, "many")
        assert resolve_num_threads(default=5) == 5
        monkeypatch.delenv(NUM_THREADS_ENV)
        assert resolve_num_threads(default=5) == 5


def quadratic_problem(n_steps: int, feasible=None) -> PathProblem:
    # discrete Dirichlet energy; the minimizer is the straight line
    return PathProblem(
        np.array([0.0, 1.0]),
        np.array([1.0, -1.0]),
        n_steps,
        lambda k, a, b: n_steps * float((b - a) @ (b - a)),
        feasible=feasible,
    )


class TestPathOptimizers:
    def test_lbfgs_recovers_straight_line(self):
        problem = quadratic_problem(8)
        start = problem.linear_path() + 0.05 * np.sin(np.arange(9))[:, None]
        start[0], start[-1] = problem.start, problem.end
        optimum = lbfgs_path(problem, initial=start)
        np.testing.assert_allclose(optimum.path, problem.linear_path(), atol=1e-5)
        assert optimum.value == pytest.approx(5.0, abs=1e-8)
        assert optimum.trace[0] >= optimum.trace[-1]

    def test_single_step_has_nothing_to_optimize(self):
        optimum = lbfgs_path(quadratic_problem(1))
        assert optimum.converged
        assert optimum.path.shape == (2, 2)

    def test_infeasible_nodes_cost_infinity(self):
        problem = quadratic_problem(4, feasible=lambda x: x[0] <= 0.9)
        assert problem.term(0, np.array([0.0, 0.0]), np.array([0.95, 0.0])) == np.inf
        with pytest.raises(DomainExitError):
            lbfgs_path(problem)

    def test_monte_carlo_never_increases(self):
        problem = quadratic_problem(6)
        start = problem.linear_path()
        start[1:-1] += 0.2
        settings = NumericSettings(mc_epochs=50)
        optimum = monte_carlo_path(problem, np.random.default_rng(11), initial=start, settings=settings)
        assert np.all(np.diff(optimum.trace) <= 0)
        assert optimum.value < problem.value(start)
        assert optimum.iterations == 50
