"""
Reports
=======
Builds the JSON-ready report dicts behind ``liestat report``, ``liestat
classify`` and ``liestat models``, and renders them either as JSON or as
text through the Jinja2 templates in liestat/templates. JSON floats carry 12
significant digits, except the spec echo, which is kept at full precision.
Text uses 6.

Key order in every dict is fixed by construction; rendering never sorts.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Sequence

try:
    from jinja2 import Environment, FileSystemLoader, TemplateNotFound  # type: ignore
except ImportError:
    raise ImportError("jinja2 is required. pip install jinja2")

import numpy as np

from liestat.algebra import (
    class_label,
    jacobi_defect,
    milnor_invariant,
    unimodular_kernel,
)
from liestat.classify import SolutionSpace, SweepRow, classify, contains
from liestat.config import Tolerances
from liestat.geometry import (
    Connection,
    coordinate_sectionals,
    curvature,
    levi_civita,
    ricci,
    scalar_curvature,
    torsion,
)
from liestat.models import (
    Model,
    TModel,
    coordinate_metric,
    flat_alpha,
    normal_coordinate_skewness,
    t_coordinate_skewness,
    t_curvature_constant,
)
from liestat.spec_loader import GroupSpec, cubic_as_dict
from liestat.statistical import (
    StatisticalStructure,
    apolarity,
    conjugate_symmetry_defect,
    constant_curvature_fit,
    curvature_pair,
    hessian_curvature,
    identity_tension,
    is_statistical,
    statistical_connection,
    statistical_curvature,
)

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"
JSON_DIGITS = 12
TEXT_DIGITS = 6
ZERO_SNAP = 1e-12


# ---------------------------------------------------------------------------
# Number formatting
# ---------------------------------------------------------------------------

def _round(x: float, digits: int | None = JSON_DIGITS, snap: bool = True) -> float:
    if snap and abs(x) < ZERO_SNAP:
        return 0.0
    if digits is None or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}") + 0.0


def clean(obj: Any, snap: bool = True, digits: int | None = JSON_DIGITS) -> Any:
    """
    Recursively convert numpy values and round floats to ``digits``
    significant digits; ``digits=None`` keeps full precision.
    """
    if isinstance(obj, dict):
        return {k: clean(v, snap, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v, snap, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist(), snap, digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj), digits, snap)
    return obj


def sig6(x: Any) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    v = float(x)
    if abs(v) < ZERO_SNAP:
        v = 0.0
    return f"{v + 0.0:.{TEXT_DIGITS}g}"


def vec(values: Sequence[float], basis: str = "e") -> str:
    """Linear combination such as '0.707107 e2 - 1 e1'; '0' for the zero vector."""
    terms = []
    for n, v in enumerate(values):
        if abs(v) < ZERO_SNAP:
            continue
        sign = "-" if v < 0 else "+"
        terms.append((sign, f"{abs(v):.{TEXT_DIGITS}g} {basis}{n + 1}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def connection_table(conn: Connection) -> list[dict[str, Any]]:
    """Nonzero nabla_{e_i} e_j as 1-based rows {"i", "j", "value": [...]}."""
    rows = []
    n = conn.dim
    for i in range(n):
        for j in range(n):
            value = conn.gamma[:, i, j]
            if float(np.max(np.abs(value))) >= ZERO_SNAP:
                rows.append({"i": i + 1, "j": j + 1, "value": value.tolist()})
    return rows


def _solution_block(space: SolutionSpace, show_basis: bool = True) -> dict[str, Any]:
    block: dict[str, Any] = {
        "label": space.label,
        "dim": space.dim,
        "nontrivial": space.nontrivial,
        "rank_threshold": space.rank_threshold,
    }
    if space.invariant is not None:
        block["milnor_invariant"] = space.invariant
    if show_basis:
        block["basis"] = [cubic_as_dict(c) for c in space.basis]
    return block


def _alpha_block(stat: StatisticalStructure, alpha: float, tol: Tolerances) -> dict[str, Any]:
    k, residual = constant_curvature_fit(stat, alpha)
    r, r_dual = curvature_pair(stat, alpha)
    conj = conjugate_symmetry_defect(stat) <= tol.validity
    block: dict[str, Any] = {
        "alpha": alpha,
        "constant_curvature": k,
        "residual": residual,
        "is_constant": residual <= tol.flatness,
        "flat": r.max_abs() <= tol.flatness,
        "dual_flat": r_dual.max_abs() <= tol.flatness,
    }
    if stat.dim >= 2:
        block["sectional"] = coordinate_sectionals(stat.alg, stat.ip, r)
        block["sectional_invariant"] = conj or alpha == 0
        block["statistical_sectional"] = coordinate_sectionals(
            stat.alg, stat.ip, statistical_curvature(stat, alpha)
        )
    return block


def statistical_block(stat: StatisticalStructure, alphas: Sequence[float], tol: Tolerances) -> dict[str, Any]:
    tau, e_vec = apolarity(stat)
    flag, defect = is_statistical(stat.alg, stat.ip, statistical_connection(stat, 1.0), tol.validity)
    conj_defect = conjugate_symmetry_defect(stat)
    if conj_defect > tol.validity:
        logger.warning("structure is not conjugate symmetric (defect %.3e); alpha-sectional values are frame values", conj_defect)
    return {
        "cubic": cubic_as_dict(stat.cubic),
        "skewness": connection_table(Connection(stat.skewness)),
        "is_statistical": flag,
        "statistical_defect": defect,
        "conjugate_symmetry_defect": conj_defect,
        "conjugate_symmetric": conj_defect <= tol.validity,
        "tau": tau,
        "E": e_vec,
        "equiaffine": float(np.linalg.norm(tau)) <= tol.validity,
        "identity_tension": identity_tension(stat),
        "alpha": [_alpha_block(stat, a, tol) for a in alphas],
    }


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def build_report(spec: GroupSpec, tol: Tolerances, with_classification: bool = False) -> dict[str, Any]:
    alg, ip = spec.alg, spec.ip
    unimodular, kernel_rows = unimodular_kernel(alg, tol.validity)
    algebra: dict[str, Any] = {
        "name": alg.name,
        "label": class_label(alg, tol.validity),
        "dim": alg.dim,
        "jacobi_defect": jacobi_defect(alg),
        "unimodular": unimodular,
        "unimodular_kernel": [row.tolist() for row in kernel_rows],
    }
    if not unimodular and alg.dim == 3:
        algebra["milnor_invariant"] = milnor_invariant(alg)

    lc = levi_civita(alg, ip)
    curv = curvature(alg, lc)
    geometry: dict[str, Any] = {
        "levi_civita": connection_table(lc),
        "torsion_defect": float(np.max(np.abs(torsion(alg, lc)))),
        "ricci": ricci(alg, lc),
        "scalar_curvature": scalar_curvature(alg, ip, lc),
        "sectional": coordinate_sectionals(alg, ip, curv) if alg.dim >= 2 else {},
    }

    report: dict[str, Any] = {
        "algebra": algebra,
        "geometry": geometry,
    }
    if spec.cubic is not None:
        stat = StatisticalStructure(alg, ip, spec.cubic)
        report["statistical"] = statistical_block(stat, spec.alphas, tol)
    if with_classification:
        space = classify(alg, ip, tol, label=algebra["label"])
        block = _solution_block(space)
        if spec.cubic is not None:
            inside, distance = contains(space, spec.cubic, tol.containment)
            block["contains_cubic"] = inside
            block["cubic_distance"] = distance
        report["classification"] = block
    logger.info("report built for %r", alg)
    # spec echo is never rounded
    return {"spec": clean(spec.echo(), snap=False, digits=None), **clean(report)}


def build_classify_report(
    mode: str, params: Sequence[float], space: SolutionSpace, show_basis: bool,
) -> dict[str, Any]:
    out: dict[str, Any] = {"mode": mode, "params": list(params)}
    out.update(_solution_block(space, show_basis))
    return clean(out)


def build_sweep_report(family: str, grid: Sequence[float], rows: Sequence[SweepRow]) -> dict[str, Any]:
    return clean({
        "mode": "sweep",
        "family": family,
        "grid": list(grid),
        "rows": [
            {"params": list(r.params), "label": r.label, "dim": r.dim, "error": r.error}
            for r in rows
        ],
    })


def build_models_report(
    model: Model, stat: StatisticalStructure, alpha: float, tol: Tolerances,
) -> dict[str, Any]:
    k, residual = constant_curvature_fit(stat, alpha)
    r, r_dual = curvature_pair(stat, alpha)
    is_t = isinstance(model, TModel)
    out: dict[str, Any] = {
        "model": model.name,
        "nu": model.nu if is_t else None,
        "alpha": alpha,
        "nu1": model.nu1,
        "nu2": model.nu2,
        "algebra": {"name": stat.alg.name, "params": list(stat.alg.params)},
        "coordinate_metric": coordinate_metric(model, (0.0, 1.0)),
        "frame_skewness": cubic_as_dict(stat.cubic),
        "coordinate_skewness": (
            t_coordinate_skewness(model.nu, (0.0, 1.0)) if is_t else normal_coordinate_skewness((0.0, 1.0))
        ),
        "connection": connection_table(statistical_connection(stat, alpha)),
        "dual_connection": connection_table(statistical_connection(stat, -alpha)),
        "curvature_constant": k,
        "closed_form": t_curvature_constant(model.nu, alpha) if is_t else -(1.0 - alpha * alpha) / 2.0,
        "residual": residual,
        "flat": r.max_abs() <= tol.flatness,
        "dual_flat": r_dual.max_abs() <= tol.flatness,
        "flat_alpha": None,
        "conjugate_symmetry_defect": conjugate_symmetry_defect(stat),
        "statistical_sectional": coordinate_sectionals(
            stat.alg, stat.ip, statistical_curvature(stat, alpha)
        )["12"],
    }
    if is_t and model.nu != 1:
        out["flat_alpha"] = flat_alpha(model.nu)
    elif not is_t:
        out["flat_alpha"] = 1.0
    # H[l, i, j, k] is only defined on a flat connection
    out["hessian_curvature"] = (
        hessian_curvature(stat, alpha, tol.flatness) if out["flat"] else None
    )
    return clean(out)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        autoescape=False,
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )
    env.filters["sig6"] = sig6
    env.filters["vec"] = vec
    return env


def render_text(report: dict[str, Any], template_name: str) -> str:
    try:
        tmpl = _environment().get_template(template_name)
    except TemplateNotFound:
        logger.error("Template not found: %s; falling back to JSON output", template_name)
        return render_json(report)
    return tmpl.render(report=report)

