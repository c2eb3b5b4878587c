"""
GroupSpec ingestion
===================
Loads a GroupSpec JSON document, validates it against
config/schemas/groupspec-schema.json and builds the algebra, metric and
optional cubic form it describes.

    {
      "preset": {"name": "milnor", "params": [1, 3, 1]},      # or "raw": {"dim": 3, "brackets": [[i, j, k, v], ...]}
      "metric": "orthonormal",                                # or Gram rows
      "cubic":  [[1, 1, 1, 1.0], [1, 3, 3, -1.0]],            # symmetrized
      "alphas": [-1, 0, 1],
      "tolerances": {"rank_rel": 1e-9}
    }

A bracket entry [i, j, k, v] means [e_i, e_j] has e_k-component v; the
antisymmetric partner is implied. Schema errors, JSON syntax errors and index
range errors become InputError; algebra and metric invariants raise
ValidationError from the constructors.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

try:
    import jsonschema
    from jsonschema import ValidationError as SchemaValidationError
except ImportError:
    raise ImportError("jsonschema is required. Run: pip install jsonschema")

import numpy as np

from liestat.algebra import VALIDITY_TOL, LieAlgebra, preset
from liestat.cubic import CubicForm, component_indices, component_label, cubic_from_entries
from liestat.errors import InputError
from liestat.geometry import InnerProduct

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).parent.parent / "config" / "schemas" / "groupspec-schema.json"
DEFAULT_ALPHAS = (-1.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class GroupSpec:
    alg: LieAlgebra
    ip: InnerProduct
    cubic: CubicForm | None = None
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    tolerances: dict[str, Any] = field(default_factory=dict)
    title: str = ""
    source: dict[str, Any] = field(default_factory=dict)

    def echo(self) -> dict[str, Any]:
        """Normalized document; loading it again yields the same geometry."""
        doc: dict[str, Any] = {}
        if self.title:
            doc["title"] = self.title
        if "preset" in self.source:
            doc["preset"] = {
                "name": self.source["preset"]["name"],
                "params": [float(p) for p in self.source["preset"].get("params", [])],
            }
        else:
            doc["raw"] = {"dim": self.alg.dim, "brackets": _bracket_entries(self.alg)}
        doc["metric"] = "orthonormal" if self.ip.is_identity() else self.ip.gram.tolist()
        if self.cubic is not None:
            doc["cubic"] = [
                [idx[0] + 1, idx[1] + 1, idx[2] + 1, value] for idx, value in self.cubic.items()
            ]
        doc["alphas"] = list(self.alphas)
        if self.tolerances:
            doc["tolerances"] = dict(self.tolerances)
        return doc


@lru_cache(maxsize=1)
def _schema() -> dict:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def load_group_spec(path: str | Path, validity: float = VALIDITY_TOL) -> GroupSpec:
    """Read and parse a GroupSpec file; ``validity`` applies unless the file sets its own."""
    spec_path = Path(path)
    if not spec_path.exists():
        raise InputError(f"spec file not found: {spec_path}")
    logger.info("Loading group spec from: %s", spec_path)
    text = spec_path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{spec_path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from exc
    return parse_group_spec(data, origin=str(spec_path), validity=validity)


def parse_group_spec(data: Any, origin: str = "<spec>", validity: float = VALIDITY_TOL) -> GroupSpec:
    try:
        jsonschema.validate(instance=data, schema=_schema())
    except SchemaValidationError as exc:
        raise InputError(f"{origin}: schema violation at '{exc.json_path}': {exc.message}") from exc

    validity = float(data.get("tolerances", {}).get("validity", validity))
    if "preset" in data:
        p = data["preset"]
        alg = preset(p["name"], p.get("params", []), tol=validity)
    else:
        alg = _raw_algebra(data["raw"]["dim"], data["raw"]["brackets"], validity)

    ip = _metric(alg.dim, data.get("metric", "orthonormal"))
    cubic = cubic_from_entries(alg.dim, data["cubic"]) if "cubic" in data else None
    alphas = tuple(float(a) for a in data.get("alphas", DEFAULT_ALPHAS))
    logger.debug("spec %s: %r, cubic=%s", origin, alg, cubic)
    return GroupSpec(
        alg=alg,
        ip=ip,
        cubic=cubic,
        alphas=alphas,
        tolerances=dict(data.get("tolerances", {})),
        title=data.get("title", ""),
        source=data,
    )


def _raw_algebra(dim: int, brackets: list[list[float]], validity: float = VALIDITY_TOL) -> LieAlgebra:
    c = np.zeros((dim, dim, dim))
    assigned: dict[tuple[int, int, int], float] = {}
    for n, row in enumerate(brackets):
        idx = []
        for name, raw in zip("ijk", row[:3]):
            if not 1 <= int(raw) <= dim:
                raise InputError(f"brackets[{n}]: index {name}={int(raw)} out of range 1..{dim}")
            idx.append(int(raw) - 1)
        i, j, k = idx
        value = float(row[3])
        if i == j:
            if value != 0.0:
                raise InputError(f"brackets[{n}]: [e{i + 1}, e{i + 1}] must vanish, got {value:g}")
            continue
        for key, v in (((i, j, k), value), ((j, i, k), -value)):
            if key in assigned and assigned[key] != v:
                raise InputError(
                    f"brackets[{n}]: [e{key[0] + 1}, e{key[1] + 1}] e{k + 1}-component "
                    f"already set to {assigned[key]:g}"
                )
            assigned[key] = v
            c[key[2], key[0], key[1]] = v
    return LieAlgebra(c, tol=validity)


def _bracket_entries(alg: LieAlgebra) -> list[list[float]]:
    """Nonzero [i, j, k, v] with i < j, 1-based."""
    out: list[list[float]] = []
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                value = float(alg.c[k, i, j])
                if value != 0.0:
                    out.append([i + 1, j + 1, k + 1, value])
    return out


def _metric(dim: int, metric: Any) -> InnerProduct:
    if metric == "orthonormal":
        return InnerProduct.orthonormal(dim)
    gram = np.array(metric, dtype=float) if all(len(r) == dim for r in metric) else None
    if gram is None or gram.shape != (dim, dim):
        raise InputError(f"metric: expected {dim}x{dim} Gram rows")
    return InnerProduct(gram)


def cubic_as_dict(cubic: CubicForm) -> dict[str, float]:
    """{"C111": v, ...} over the canonical components."""
    return {
        f"C{component_label(idx)}": float(v)
        for idx, v in zip(component_indices(cubic.dim), cubic.values)
    }
