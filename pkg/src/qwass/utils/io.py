"""JSON, CSV and manifest files."""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from ..exceptions import InvariantViolationError
from ..lindblad import detailed_balance_generator
from ..models import (
    DensityOperator,
    GaussianState,
    HermitianOperator,
    JumpTerm,
    LindbladGenerator,
    RunConfig,
    TraceConvention,
)
from ..models.gaussian import admissibility_check
from ..settings import CSV_SIGNIFICANT_DIGITS

PathLike = Union[str, Path]


def atomic_write_text(path: PathLike, text: str) -> Path:
    """Write through a temp file in the target directory, then os.replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_json(path: PathLike, data: Any) -> Path:
    if isinstance(data, BaseModel):
        text = data.model_dump_json(indent=2)
    else:
        text = json.dumps(data, indent=2, default=_json_default)
    return atomic_write_text(path, text + "\n")


def _json_default(value: Any):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def read_json(path: PathLike) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_csv(path: PathLike, header: Sequence[str], rows: np.ndarray) -> Path:
    """Comma-separated values with 17 significant digits and LF line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.atleast_2d(np.asarray(rows, dtype=float))
    if not data.size:
        path.write_text(",".join(header) + "\n", encoding="utf-8")
        return path
    if data.shape[1] != len(header):
        raise InvariantViolationError(f"{len(header)} columns declared, rows have {data.shape[1]}")
    np.savetxt(
        path,
        data,
        fmt=f"%.{CSV_SIGNIFICANT_DIGITS}g",
        delimiter=",",
        header=",".join(header),
        comments="",
        newline="\n",
    )
    return path


def _matrix_from_dict(data: dict) -> np.ndarray:
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    dim = int(data.get("dim", re.shape[0]))
    if re.shape != (dim, dim) or im.shape != re.shape:
        raise InvariantViolationError(f"matrix JSON shape mismatch for dim={dim}")
    return re + 1j * im


def load_operator(path: PathLike) -> HermitianOperator:
    return HermitianOperator(matrix=_matrix_from_dict(read_json(path)))


def save_operator(path: PathLike, op: HermitianOperator) -> Path:
    return write_json(path, op.to_dict())


def generator_from_dict(data: dict) -> LindbladGenerator:
    """Generator from either explicit terms (with adjoint indices) or jump pairs.

    With "jumps" the adjoint terms are appended automatically; with "terms"
    the data is taken as given so that validation can report inconsistencies.
    """
    convention = TraceConvention(data.get("convention", TraceConvention.STANDARD.value))
    sigma_matrix = _matrix_from_dict(data["sigma"])
    sigma = DensityOperator.from_matrix(sigma_matrix, convention)
    name = data.get("name", "generator")
    if "terms" in data:
        terms = [
            JumpTerm(V=_matrix_from_dict(t["V"]), omega=float(t.get("omega", 0.0)), adjoint=int(t["adjoint"]))
            for t in data["terms"]
        ]
        return LindbladGenerator(sigma=sigma, terms=terms, name=name)
    jumps = [(_matrix_from_dict(j["V"]), float(j.get("omega", 0.0))) for j in data.get("jumps", [])]
    return detailed_balance_generator(sigma, jumps, name=name)


def load_generator(path: PathLike) -> LindbladGenerator:
    return generator_from_dict(read_json(path))


def save_generator(path: PathLike, gen: LindbladGenerator) -> Path:
    return write_json(path, gen.to_dict())


def gaussian_from_dict(data: dict) -> GaussianState:
    sigma = np.asarray(data["Sigma"], dtype=float)
    admissibility_check(sigma)
    mu = np.asarray(data.get("mu", np.zeros(sigma.shape[0])), dtype=float)
    return GaussianState(mu=mu, Sigma=sigma)


def load_gaussian(path: PathLike) -> GaussianState:
    return gaussian_from_dict(read_json(path))


def load_run_config(path: Optional[PathLike], overrides: dict[str, Any]) -> RunConfig:
    """One JSON file plus flag overrides; flags win and None flags are skipped.

    A "settings" mapping in the overrides is merged key by key into the file's.
    """
    data: dict[str, Any] = read_json(path) if path is not None else {}
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "settings" and isinstance(data.get("settings"), dict):
            data["settings"] = {**data["settings"], **{k: v for k, v in value.items() if v is not None}}
        else:
            data[key] = value
    return RunConfig(**data)
