"""qwass command line: every worked example as deterministic file artifacts."""

import json
import time
from pathlib import Path
from typing import Any, Callable, Optional

import click
import numpy as np
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from . import __version__
from .exceptions import DomainExitError, GeneratorValidationError, PreconditionError, QwassError
from .flows import (
    analytic_fermionic_geodesic,
    entropy_objective,
    geodesic_bvp,
    geodesic_distance_closed_form,
    natural_gradient_flow,
    sbp_equivalence_check,
    sbp_solve,
    sbp_solve_parametric,
)
from .gaussian import (
    bures_wasserstein_distance,
    gaussian_geodesic,
    symplectic_eigenvalues,
    theta_to_state,
    thermal_state,
    wigner_grid,
)
from .lindblad import Multiplication, lindblad_structure, relative_entropy, validate_generator
from .metric import DensityModel, FermionicQubitModel, GaussianModel, ParametricModel, get_model, info_matrix
from .models import Command, DensityOperator, FlowTrajectory, RunConfig, RunManifest
from .settings import POSITIVITY_TOL
from .utils import (
    gaussian_from_dict,
    generator_from_dict,
    load_generator,
    load_operator,
    load_run_config,
    parallel_map,
    read_json,
    write_csv,
    write_json,
)

console = Console()

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_DOMAIN = 4

ANALYTIC_TOL = 1e-3
NEAR_BOUNDARY_TOL = 1e-2
NEAR_BOUNDARY = 0.99
INFOMATRIX_TOL = 1e-8

DEFAULT_GRIDS: dict[str, list[list[float]]] = {
    "fermionic-n1": [[round(0.1 * k, 1)] for k in range(-9, 10)],
    "fermionic-n1-ac": [[round(0.1 * k, 1)] for k in range(-9, 10)],
    "depolarizing-n2": [[0.1], [0.5], [1.0], [2.0]],
    "gaussian": [[0.0, 0.0, 1.0, 0.0, 1.0]],
}

Body = Callable[[RunConfig, Path, RunManifest], None]


class JsonVector(click.ParamType):
    """A number or a JSON array of numbers."""

    name = "json-vector"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return [float(v) for v in value]
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError:
            self.fail(f"{value!r} is not a number or JSON array", param, ctx)
        if isinstance(parsed, (int, float)):
            return [float(parsed)]
        if isinstance(parsed, list) and all(isinstance(v, (int, float)) for v in parsed):
            return [float(v) for v in parsed]
        self.fail(f"{value!r} is not a number or JSON array of numbers", param, ctx)


class JsonGrid(click.ParamType):
    """A JSON array of points (numbers or arrays) or start:stop:count."""

    name = "json-grid"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        if ":" in value and not value.lstrip().startswith("["):
            try:
                start, stop, count = value.split(":")
                return [[float(v)] for v in np.linspace(float(start), float(stop), int(count))]
            except ValueError:
                self.fail(f"{value!r} is not of the form start:stop:count", param, ctx)
        try:
            parsed = json.loads(value)
        except json.JSONDecodeError:
            self.fail(f"{value!r} is not a JSON array", param, ctx)
        if not isinstance(parsed, list):
            self.fail(f"{value!r} is not a JSON array", param, ctx)
        return [p if isinstance(p, list) else [p] for p in parsed]


JSON_VECTOR = JsonVector()
JSON_GRID = JsonGrid()


def common_options(f):
    """--config and --out, shared by every subcommand."""
    f = click.option("--out", "-o", help="Output directory for artifacts", type=click.Path(file_okay=False))(f)
    f = click.option(
        "--config",
        "config_path",
        help="Run configuration JSON; flags override its values",
        type=click.Path(exists=True, dir_okay=False),
    )(f)
    return f


def optimizer_options(f):
    f = click.option("--seed", help="RNG seed (mandatory for --mode mc)", type=int)(f)
    f = click.option("--mode", help="Path optimizer", type=click.Choice(["grad", "mc"]))(f)
    f = click.option("--N", "n_steps", help="Number of path steps", type=int)(f)
    return f


def _require(value, flag: str):
    if value is None:
        raise click.UsageError(f"{flag} is required for this command")
    return value


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def print_summary(command: str, manifest: RunManifest) -> None:
    table = Table(title=f"📐 qwass {command} summary")
    table.add_column("Item", style="bold")
    table.add_column("Value", justify="right", style="cyan")

    for key, value in manifest.metrics.items():
        table.add_row(key, _fmt(value))
    for key, passed in manifest.checks.items():
        table.add_row(key, "[green]✓[/green]" if passed else "[red]✗[/red]")
    table.add_row("artifacts", ", ".join(manifest.artifacts))
    table.add_row("wall clock [s]", f"{manifest.wall_clock_seconds:.2f}")
    table.add_row("exit code", str(manifest.exit_code))
    console.print(table)


def run_command(ctx: click.Context, command: Command, config_path: Optional[str], overrides: dict, body: Body) -> None:
    """Load the config, run the body, write run_config.json and manifest.json, exit with the mapped code."""
    try:
        config = load_run_config(config_path, {"command": command.value, **overrides})
    except (ValidationError, json.JSONDecodeError) as e:
        console.print(f"[red]✗[/red] Invalid run configuration:\n{e}")
        ctx.exit(EXIT_USAGE)

    out_dir = Path(config.out)
    write_json(out_dir / "run_config.json", config)
    manifest = RunManifest(config=config.model_dump(mode="json"), artifacts=["run_config.json"])
    started = time.perf_counter()
    code = EXIT_OK
    try:
        body(config, out_dir, manifest)
    except KeyError as e:
        console.print(f"[red]✗[/red] {e.args[0] if e.args else e}")
        ctx.exit(EXIT_USAGE)
    except DomainExitError as e:
        code = EXIT_DOMAIN
        where = f" at step {e.step_index}" if e.step_index is not None else ""
        last = f"; last valid point {np.asarray(e.last_valid).tolist()}" if e.last_valid is not None else ""
        manifest.message = f"domain exit{where}: {e}{last}"
        console.print(f"[red]✗[/red] {manifest.message}")
    except (QwassError, ValidationError) as e:
        code = EXIT_INFEASIBLE
        manifest.message = f"infeasible input: {e}"
        console.print(f"[red]✗[/red] {manifest.message}")

    manifest.exit_code = code
    manifest.wall_clock_seconds = time.perf_counter() - started
    manifest.artifacts.append("manifest.json")
    write_json(out_dir / "manifest.json", manifest)
    print_summary(command.value, manifest)
    if code == EXIT_OK:
        console.print(f"[green]✓[/green] Artifacts written to {out_dir}")
    ctx.exit(code)


def _theta_header(prefix: str, d: int) -> list[str]:
    return [f"{prefix}_{i + 1}" for i in range(d)]


def _write_trajectory(path: Path, trajectory: FlowTrajectory, extra: dict[str, np.ndarray]) -> None:
    header = ["t"] + _theta_header("theta", trajectory.thetas.shape[1]) + list(extra)
    columns = [trajectory.times[:, None], trajectory.thetas] + [np.asarray(v, dtype=float)[:, None] for v in extra.values()]
    write_csv(path, header, np.hstack(columns))


# infomatrix


def infomatrix_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    model = get_model(config.model or "fermionic-n1")
    grid = config.theta_grid if config.theta_grid is not None else DEFAULT_GRIDS.get(model.name, [])
    thetas = [model.check_domain(t, step_index=i) for i, t in enumerate(grid)]
    settings = config.settings
    matrices = parallel_map(lambda t: info_matrix(model, t, settings), thetas, description="Evaluating G_W...")

    d = model.dim_params
    iu = np.triu_indices(d)
    labels = [f"{i + 1}{j + 1}" for i, j in zip(*iu)]
    header = _theta_header("theta", d) + [f"G_{lab}" for lab in labels]
    if model.has_closed_form:
        header += [f"reference_{lab}" for lab in labels] + ["deviation"]

    rows = []
    deviations = []
    for theta, g in zip(thetas, matrices):
        row = list(theta) + list(g[iu])
        if model.has_closed_form:
            ref = model.closed_form(theta)
            dev = float(np.max(np.abs(g - ref)))
            deviations.append(dev)
            row += list(ref[iu]) + [dev]
        rows.append(row)

    write_csv(out_dir / "infomatrix.csv", header, np.array(rows, dtype=float).reshape(len(rows), len(header)))
    manifest.artifacts.append("infomatrix.csv")
    manifest.metrics["grid_points"] = float(len(thetas))
    if deviations:
        manifest.metrics["max_deviation"] = max(deviations)
        manifest.checks["closed_form_match"] = max(deviations) <= INFOMATRIX_TOL


# geodesic


def _feasible_endpoint(model: ParametricModel, theta: list[float], label: str) -> np.ndarray:
    try:
        return model.check_domain(theta)
    except DomainExitError as e:
        raise PreconditionError(f"endpoint {label} is infeasible for {model.name}: {e}") from e


def _gaussian_geodesic(model: GaussianModel, a: np.ndarray, b: np.ndarray, config: RunConfig, manifest: RunManifest):
    s0, s1 = theta_to_state(a, model.m), theta_to_state(b, model.m)
    trajectory = gaussian_geodesic(s0, s1, config.N, mode=config.mode, seed=config.seed, settings=config.settings)
    action = trajectory.diagnostics["final_action"][0]
    linear = trajectory.diagnostics["linear_action"][0]
    manifest.metrics["path_action"] = action
    manifest.metrics["linear_path_action"] = linear
    manifest.metrics["bures_wasserstein_squared"] = bures_wasserstein_distance(s0, s1) ** 2
    manifest.checks["improves_on_linear"] = action <= linear + 1e-12
    return trajectory, {}


def _density_geodesic(model: ParametricModel, a: np.ndarray, b: np.ndarray, config: RunConfig, manifest: RunManifest):
    trajectory = geodesic_bvp(model, a, b, config.N, mode=config.mode, seed=config.seed, settings=config.settings)
    action = trajectory.diagnostics["path_action"][0]
    linear = trajectory.diagnostics["linear_path_action"][0]
    manifest.metrics["path_action"] = action
    manifest.metrics["linear_path_action"] = linear
    objective = trajectory.diagnostics["objective"][-1]
    manifest.metrics["objective"] = objective
    # compared in the minimized (midpoint) objective; path_action is the left-point sum
    manifest.checks["improves_on_linear"] = objective <= trajectory.diagnostics["linear_objective"][0] + 1e-12
    manifest.checks["converged"] = trajectory.converged

    extra: dict[str, np.ndarray] = {}
    if isinstance(model, FermionicQubitModel):
        t = trajectory.times
        if model.multiplication is Multiplication.KUBO_MORI:
            reference = analytic_fermionic_geodesic(float(a[0]), float(b[0]), t)
            manifest.metrics["closed_form_action"] = geodesic_distance_closed_form(float(a[0]), float(b[0])) ** 2
        else:
            reference = (1.0 - t) * a[0] + t * b[0]
        deviation = float(np.max(np.abs(trajectory.thetas[:, 0] - reference)))
        tol = NEAR_BOUNDARY_TOL if max(abs(a[0]), abs(b[0])) > NEAR_BOUNDARY else ANALYTIC_TOL
        manifest.metrics["sup_deviation"] = deviation
        manifest.checks["analytic_match"] = deviation <= tol
        extra["reference"] = reference
    return trajectory, extra


def geodesic_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    model = get_model(config.model or "fermionic-n1")
    a = _feasible_endpoint(model, _require(config.theta0, "--theta0"), "theta0")
    b = _feasible_endpoint(model, _require(config.theta1, "--theta1"), "theta1")

    if np.array_equal(a, b):
        write_csv(out_dir / "path.csv", ["t"] + _theta_header("theta", a.size), np.concatenate([[0.0], a])[None, :])
        manifest.artifacts.append("path.csv")
        manifest.metrics["path_action"] = 0.0
        return

    if isinstance(model, GaussianModel):
        trajectory, extra = _gaussian_geodesic(model, a, b, config, manifest)
    else:
        trajectory, extra = _density_geodesic(model, a, b, config, manifest)
    _write_trajectory(out_dir / "path.csv", trajectory, extra)
    manifest.artifacts.append("path.csv")
    if not trajectory.converged:
        manifest.message = trajectory.message


# flow


def _density_model(name: Optional[str]) -> DensityModel:
    model = get_model(name or "fermionic-n1")
    if not isinstance(model, DensityModel):
        raise click.UsageError(f"model '{model.name}' has no density states; choose a density model")
    return model


def flow_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    model = _density_model(config.model)
    theta0 = model.check_domain(_require(config.theta0, "--theta0"), step_index=0)
    objective = entropy_objective(model)
    trajectory = natural_gradient_flow(model, theta0, objective, config.tau, config.steps, settings=config.settings)
    _write_trajectory(out_dir / "trajectory.csv", trajectory, {"objective": trajectory.diagnostics["objective"]})
    manifest.artifacts.append("trajectory.csv")

    manifest.metrics["final_time"] = float(trajectory.times[-1])
    manifest.metrics["final_objective"] = trajectory.diagnostics["objective"][-1]
    for i, value in enumerate(trajectory.final):
        manifest.metrics[f"final_theta_{i + 1}"] = float(value)
    if isinstance(model, FermionicQubitModel) and model.multiplication is Multiplication.KUBO_MORI:
        # the entropy flow of this family is theta' = -theta
        expected = float(theta0[0]) * np.exp(-trajectory.times[-1])
        deviation = abs(float(trajectory.final[0]) - expected)
        manifest.metrics["decay_deviation"] = deviation
        manifest.checks["exponential_decay_match"] = deviation <= ANALYTIC_TOL


# bridge


def _state_from_file(path: str, convention) -> DensityOperator:
    matrix = load_operator(path).matrix
    return DensityOperator.from_matrix(matrix, convention, mass=float(convention.trace(matrix).real))


def bridge_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    settings = config.settings
    model: Optional[DensityModel] = None
    if config.rho_in_path is not None:
        generator = load_generator(_require(config.generator_path, "--generator"))
        structure = lindblad_structure(generator)
        convention = generator.sigma.trace_convention
        rho_in = _state_from_file(config.rho_in_path, convention)
        rho_fi = _state_from_file(_require(config.rho_fi_path, "--rho-fi"), convention)
        path = sbp_solve(structure, rho_in, rho_fi, config.beta, config.N, config.mode, config.seed, settings=settings)
        prefix = "c"
    else:
        model = _density_model(config.model)
        structure = model.structure
        a = _feasible_endpoint(model, _require(config.theta0, "--theta0"), "theta0")
        b = _feasible_endpoint(model, _require(config.theta1, "--theta1"), "theta1")
        if config.parametric:
            path = sbp_solve_parametric(model, a, b, config.beta, config.N, config.mode, config.seed, settings=settings)
            prefix = "theta"
        else:
            rho_in, rho_fi = model.state(a), model.state(b)
            path = sbp_solve(structure, rho_in, rho_fi, config.beta, config.N, config.mode, config.seed, settings=settings)
            prefix = "c"

    report = sbp_equivalence_check(path, structure, settings=settings)
    path.equivalence_residual = report.residual
    sigma = structure.generator.sigma
    entropies = np.array([relative_entropy(s, sigma) for s in path.states])
    nodes = np.asarray(path.parameters, dtype=float)
    header = ["t"] + _theta_header(prefix, nodes.shape[1]) + ["relative_entropy"]
    write_csv(out_dir / "bridge.csv", header, np.hstack([path.times[:, None], nodes, entropies[:, None]]))
    write_json(out_dir / "equivalence.json", report)
    manifest.artifacts += ["bridge.csv", "equivalence.json"]

    manifest.metrics["functional_value"] = path.functional_value
    manifest.metrics["equivalence_lhs"] = report.lhs
    manifest.metrics["equivalence_rhs"] = report.rhs
    manifest.metrics["equivalence_residual"] = report.residual
    manifest.metrics["entropy_difference"] = report.entropy_difference
    manifest.checks["converged"] = path.converged
    if (
        config.beta == 0
        and isinstance(model, FermionicQubitModel)
        and model.multiplication is Multiplication.KUBO_MORI
    ):
        reference = geodesic_distance_closed_form(float(a[0]), float(b[0])) ** 2
        manifest.metrics["geodesic_action"] = reference
        manifest.checks["geodesic_action_match"] = abs(path.functional_value - reference) <= ANALYTIC_TOL


# wigner-grid


def wigner_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    if config.input_path is not None:
        state = gaussian_from_dict(read_json(config.input_path))
    elif config.theta0 is not None:
        state = theta_to_state(config.theta0)
    else:
        state = thermal_state(0.0)
    if state.m != 1:
        raise click.UsageError("wigner-grid writes a phase-space grid for one mode only")
    xs = np.linspace(config.grid_min, config.grid_max, config.grid_points)
    rows = wigner_grid(state, xs, xs)
    write_csv(out_dir / "wigner.csv", ["x", "xi", "W"], rows)
    manifest.artifacts.append("wigner.csv")
    if config.grid_points > 1:
        cell = (xs[1] - xs[0]) ** 2
        manifest.metrics["grid_mass"] = float(np.sum(rows[:, 2]) * cell)
    manifest.metrics["max_W"] = float(np.max(rows[:, 2]))


# validate


def _detect_kind(data: dict) -> str:
    if "sigma" in data:
        return "generator"
    if "Sigma" in data:
        return "gaussian"
    if "re" in data:
        return "operator"
    raise click.UsageError("cannot tell the input kind; pass --kind")


def validate_body(config: RunConfig, out_dir: Path, manifest: RunManifest) -> None:
    data = read_json(_require(config.input_path, "--input"))
    kind = _detect_kind(data) if config.kind == "auto" else config.kind
    manifest.message = f"validated {kind}"

    if kind == "generator":
        report = validate_generator(generator_from_dict(data), tol=config.settings.hermitian_tol * 100)
        table = Table(title="🔍 Detailed-balance check")
        table.add_column("Term", justify="right", style="bold")
        table.add_column("Adjoint", justify="right")
        table.add_column("Frequency", justify="right")
        table.add_column("Modular", justify="right")
        for j, residuals in enumerate(
            zip(report.adjoint_residuals, report.frequency_residuals, report.modular_residuals)
        ):
            table.add_row(str(j), *(f"{r:.2e}" for r in residuals))
        console.print(table)
        manifest.metrics["max_residual"] = report.max_residual
        manifest.checks["detailed_balance"] = report.valid
        if not report.valid:
            raise GeneratorValidationError("; ".join(report.failures), report)
    elif kind == "operator":
        op = load_operator(config.input_path)
        eigenvalues = np.linalg.eigvalsh(op.matrix)
        manifest.metrics["min_eigenvalue"] = float(eigenvalues[0])
        manifest.metrics["trace"] = float(np.trace(op.matrix).real)
        manifest.checks["hermitian"] = True
        manifest.checks["positive"] = bool(eigenvalues[0] >= -POSITIVITY_TOL)
    elif kind == "gaussian":
        state = gaussian_from_dict(data)
        manifest.metrics["min_symplectic_eigenvalue"] = float(np.min(symplectic_eigenvalues(state.Sigma)))
        manifest.checks["admissible"] = True


# commands


@click.group()
@click.version_option(__version__, prog_name="qwass")
def cli():
    """📐 qwass - quantum Wasserstein information geometry."""
    console.print(Panel.fit(Text("📐 qwass - quantum Wasserstein geometry", style="bold blue"), style="bold"))


@cli.command()
@click.option("--model", "-m", help="Registered model name", type=str)
@click.option("--grid", "theta_grid", help="θ grid: JSON array or start:stop:count", type=JSON_GRID)
@common_options
@click.pass_context
def infomatrix(ctx, model, theta_grid, config_path, out):
    """Wasserstein information matrix over a θ grid."""
    run_command(ctx, Command.INFOMATRIX, config_path, {"model": model, "theta_grid": theta_grid, "out": out}, infomatrix_body)


@cli.command()
@click.option("--model", "-m", help="Registered model name", type=str)
@click.option("--theta0", help="Start point (number or JSON array)", type=JSON_VECTOR)
@click.option("--theta1", help="End point (number or JSON array)", type=JSON_VECTOR)
@optimizer_options
@common_options
@click.pass_context
def geodesic(ctx, model, theta0, theta1, n_steps, mode, seed, config_path, out):
    """Geodesic between two parameter points by action minimization."""
    overrides = {"model": model, "theta0": theta0, "theta1": theta1, "N": n_steps, "mode": mode, "seed": seed, "out": out}
    run_command(ctx, Command.GEODESIC, config_path, overrides, geodesic_body)


@cli.command()
@click.option("--model", "-m", help="Registered density model name", type=str)
@click.option("--theta0", help="Initial point (number or JSON array)", type=JSON_VECTOR)
@click.option("--tau", help="Euler step size", type=float)
@click.option("--steps", help="Number of Euler steps", type=int)
@common_options
@click.pass_context
def flow(ctx, model, theta0, tau, steps, config_path, out):
    """Natural-gradient flow of the relative entropy."""
    overrides = {"model": model, "theta0": theta0, "tau": tau, "steps": steps, "out": out}
    run_command(ctx, Command.FLOW, config_path, overrides, flow_body)


@cli.command()
@click.option("--model", "-m", help="Registered density model name", type=str)
@click.option("--theta0", help="Initial state parameter", type=JSON_VECTOR)
@click.option("--theta1", help="Final state parameter", type=JSON_VECTOR)
@click.option("--rho-in", "rho_in_path", help="Initial state operator JSON", type=click.Path(exists=True, dir_okay=False))
@click.option("--rho-fi", "rho_fi_path", help="Final state operator JSON", type=click.Path(exists=True, dir_okay=False))
@click.option("--generator", "generator_path", help="Generator JSON", type=click.Path(exists=True, dir_okay=False))
@click.option("--beta", help="Diffusion strength β ≥ 0", type=float)
@click.option("--parametric/--state-space", default=None, help="Optimize over θ instead of states")
@optimizer_options
@common_options
@click.pass_context
def bridge(ctx, model, theta0, theta1, rho_in_path, rho_fi_path, generator_path, beta, parametric, n_steps, mode, seed, config_path, out):
    """Schrödinger bridge between two states, with the reduction-identity check."""
    overrides = {
        "model": model,
        "theta0": theta0,
        "theta1": theta1,
        "rho_in_path": rho_in_path,
        "rho_fi_path": rho_fi_path,
        "generator_path": generator_path,
        "beta": beta,
        "parametric": parametric,
        "N": n_steps,
        "mode": mode,
        "seed": seed,
        "out": out,
    }
    run_command(ctx, Command.BRIDGE, config_path, overrides, bridge_body)


@cli.command("wigner-grid")
@click.option("--input", "input_path", help="Gaussian state JSON", type=click.Path(exists=True, dir_okay=False))
@click.option("--theta0", help="Gaussian parameters (mu, upper triangle of Sigma)", type=JSON_VECTOR)
@click.option("--grid-min", type=float, help="Lower grid edge")
@click.option("--grid-max", type=float, help="Upper grid edge")
@click.option("--grid-points", type=int, help="Points per axis")
@common_options
@click.pass_context
def wigner_grid_cmd(ctx, input_path, theta0, grid_min, grid_max, grid_points, config_path, out):
    """Gaussian Wigner function on a phase-space grid."""
    overrides = {
        "input_path": input_path,
        "theta0": theta0,
        "grid_min": grid_min,
        "grid_max": grid_max,
        "grid_points": grid_points,
        "out": out,
    }
    run_command(ctx, Command.WIGNER_GRID, config_path, overrides, wigner_body)


@cli.command()
@click.option("--input", "input_path", help="Generator, operator or Gaussian state JSON", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["auto", "generator", "operator", "gaussian"]), help="Input kind")
@common_options
@click.pass_context
def validate(ctx, input_path, kind, config_path, out):
    """Validate an input file and report its invariants."""
    run_command(ctx, Command.VALIDATE, config_path, {"input_path": input_path, "kind": kind, "out": out}, validate_body)


def main(argv: Optional[list[str]] = None) -> int:
    """Entry point returning the process exit code."""
    try:
        result: Any = cli.main(args=argv, prog_name="qwass", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        console.print("\n[yellow]⚠️ Interrupted by user[/yellow]")
        return 130
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
