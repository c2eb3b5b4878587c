"""
Tolerance configuration
=======================
Numeric thresholds used across the package. Resolution order, lowest to highest:

    1. Tolerances dataclass defaults
    2. config/liestat-config.yaml   (``tolerances:`` section)
    3. per-document overrides        (GroupSpec ``tolerances`` object, CLI flags)
    4. LIESTAT_RANK_TOL env var      (replaces ``rank_rel`` only)
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Mapping

try:
    import yaml
except ImportError:
    raise ImportError("PyYAML is required. Run: pip install pyyaml")

from liestat.errors import InputError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "liestat-config.yaml"
RANK_TOL_ENV = "LIESTAT_RANK_TOL"


@dataclass(frozen=True)
class Tolerances:
    rank_rel: float         = 1e-9    # relative SVD threshold (times max(sigma_max, 1))
    rank_abs_floor: float   = 1e-12   # absolute floor on the SVD threshold
    ambiguity_factor: float = 10.0    # band around the threshold that raises exit 4
    validity: float         = 1e-9    # antisymmetry / Jacobi / symmetry checks
    flatness: float         = 1e-9    # Hessian-curvature precondition
    containment: float      = 1e-8    # relative distance for SolutionSpace.contains
    sweep_workers: int      = 1

    def with_overrides(self, overrides: Mapping[str, Any] | None) -> "Tolerances":
        if not overrides:
            return self
        known = {f.name: f.type for f in fields(self)}
        clean: dict[str, Any] = {}
        for key, value in overrides.items():
            if key not in known:
                raise InputError(f"tolerances.{key}: unknown tolerance")
            try:
                clean[key] = int(value) if key == "sweep_workers" else float(value)
            except (TypeError, ValueError) as exc:
                raise InputError(f"tolerances.{key}: expected a number, got {value!r}") from exc
            if clean[key] <= 0:
                raise InputError(f"tolerances.{key}: must be positive, got {value!r}")
        return replace(self, **clean)


@lru_cache(maxsize=8)
def _read_yaml(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be a mapping")
    return data


def load_tolerances(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> Tolerances:
    """Build the effective Tolerances (see module docstring for precedence)."""
    cfg_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    tol = Tolerances()
    if cfg_path.exists():
        try:
            data = _read_yaml(str(cfg_path))
        except yaml.YAMLError as exc:
            raise InputError(f"{cfg_path}: invalid YAML: {exc}") from exc
        tol = tol.with_overrides(data.get("tolerances"))
    elif path is not None:
        raise InputError(f"Config file not found: {cfg_path}")
    else:
        logger.debug("No config file at %s; using built-in tolerances", cfg_path)

    tol = tol.with_overrides(overrides)

    env_value = os.environ.get(RANK_TOL_ENV)
    if env_value:
        try:
            rank_rel = float(env_value)
        except ValueError as exc:
            raise InputError(f"{RANK_TOL_ENV}={env_value!r} is not a number") from exc
        if rank_rel <= 0:
            raise InputError(f"{RANK_TOL_ENV} must be positive, got {env_value!r}")
        tol = replace(tol, rank_rel=rank_rel)
        logger.debug("rank_rel overridden from %s: %g", RANK_TOL_ENV, rank_rel)
    return tol
