"""
Classification of conjugate-symmetric structures
================================================
For a fixed (algebra, metric), a cubic form C is conjugate symmetric exactly
when nabla^g K is totally symmetric. The condition is linear in C, so it is
assembled as a matrix over the canonical cubic components:

    column p    unit cubic E_p (see liestat.cubic.component_indices)
    row         component l of (nabla^g_{e_i} K)(e_j, e_k) - (nabla^g_{e_j} K)(e_i, e_k),
                one row per (i < j, k, l)

The kernel of that matrix is the space of conjugate-symmetric cubic forms.
It is computed by SVD with a relative threshold; singular values too close
to the threshold raise NumericAmbiguityError instead of being guessed.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from liestat.algebra import (
    LieAlgebra,
    MilnorFrameSpec,
    NonUnimodularSpec,
    echelon_rows,
    milnor_label,
    nonuni_milnor_invariant,
    preset,
)
from liestat.config import Tolerances
from liestat.cubic import CubicForm, component_count, skewness_from_cubic, unit_cubics
from liestat.errors import InputError, NumericAmbiguityError, ValidationError
from liestat.geometry import InnerProduct, covariant_derivative, levi_civita

logger = logging.getLogger(__name__)

SWEEP_FAMILIES = ("milnor", "nonuni", "product")


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    matrix: np.ndarray
    dim: int
    row_labels: tuple[str, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True, eq=False)
class SolutionSpace:
    """
    Kernel of a ConstraintSystem.

    ``basis`` is the reduced echelon basis (leading entry +1) over the canonical
    component order; ``orthonormal`` spans the same space with orthonormal rows.
    """
    dim: int
    basis: tuple[CubicForm, ...]
    orthonormal: np.ndarray
    rank_threshold: float
    label: str = ""
    invariant: float | None = None
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def nontrivial(self) -> bool:
        return self.dim > 0


@dataclass(frozen=True)
class SweepRow:
    params: tuple[float, ...]
    dim: int | None
    label: str
    error: str | None = None


# ---------------------------------------------------------------------------
# Assembly and kernel
# ---------------------------------------------------------------------------

def build_system(alg: LieAlgebra, ip: InnerProduct) -> ConstraintSystem:
    """Constraint matrix whose kernel is the space of conjugate-symmetric cubic forms."""
    if alg.dim != ip.dim:
        raise InputError(f"algebra has dim {alg.dim} but metric has dim {ip.dim}")
    n = alg.dim
    lc = levi_civita(alg, ip)
    pairs = list(itertools.combinations(range(n), 2))
    columns = []
    for unit in unit_cubics(n):
        d = covariant_derivative(lc, skewness_from_cubic(ip, unit), upper=1)   # d[i, l, j, k]
        col = [d[i, l, j, k] - d[j, l, i, k] for (i, j) in pairs for k in range(n) for l in range(n)]
        columns.append(col)
    matrix = np.array(columns, dtype=float).T.reshape(len(pairs) * n * n, component_count(n))
    labels = tuple(
        f"{l + 1}:{i + 1}{j + 1}{k + 1}" for (i, j) in pairs for k in range(n) for l in range(n)
    )
    logger.debug("constraint system for %r: %d x %d", alg, *matrix.shape)
    return ConstraintSystem(matrix, n, labels)


def kernel(system: ConstraintSystem, tolerances: Tolerances | None = None) -> SolutionSpace:
    """Rank-revealing null space of ``system`` with an echelon and an orthonormal basis."""
    tol = tolerances or Tolerances()
    m = system.matrix
    n_cols = component_count(system.dim)
    if m.size == 0:
        s = np.zeros(0)
        null = np.eye(n_cols)
        threshold = tol.rank_abs_floor
    else:
        _, s, vh = scipy.linalg.svd(m, full_matrices=True)
        sigma_max = float(s[0]) if s.size else 0.0
        threshold = max(tol.rank_rel * max(sigma_max, 1.0), tol.rank_abs_floor)
        for value in s:
            if threshold / tol.ambiguity_factor < value < threshold * tol.ambiguity_factor:
                raise NumericAmbiguityError(float(value), threshold, tol.ambiguity_factor)
        rank = int(np.sum(s > threshold))
        null = vh[rank:]
    basis_rows = echelon_rows(null) if len(null) else np.zeros((0, n_cols))
    if len(basis_rows):
        q, _ = np.linalg.qr(basis_rows.T)
        orthonormal = q.T
    else:
        orthonormal = np.zeros((0, n_cols))
    logger.debug("kernel dim %d (threshold %.3e)", len(basis_rows), threshold)
    return SolutionSpace(
        dim=len(basis_rows),
        basis=tuple(CubicForm(system.dim, row) for row in basis_rows),
        orthonormal=orthonormal,
        rank_threshold=threshold,
        singular_values=s,
    )


def classify(
    alg: LieAlgebra,
    ip: InnerProduct | None = None,
    tolerances: Tolerances | None = None,
    label: str = "",
) -> SolutionSpace:
    metric = ip if ip is not None else InnerProduct.orthonormal(alg.dim)
    space = kernel(build_system(alg, metric), tolerances)
    return _labelled(space, label)


def _labelled(space: SolutionSpace, label: str, invariant: float | None = None) -> SolutionSpace:
    return SolutionSpace(
        dim=space.dim,
        basis=space.basis,
        orthonormal=space.orthonormal,
        rank_threshold=space.rank_threshold,
        label=label,
        invariant=invariant,
        singular_values=space.singular_values,
    )


def classify_unimodular(c1: float, c2: float, c3: float, tolerances: Tolerances | None = None) -> SolutionSpace:
    """Milnor frame (c1, c2, c3) with orthonormal metric."""
    tol = tolerances or Tolerances()
    alg = MilnorFrameSpec(c1, c2, c3).algebra()
    return classify(alg, None, tol, label=milnor_label(c1, c2, c3, tol=tol.validity))


def classify_nonunimodular(xi: float, eta: float, tolerances: Tolerances | None = None) -> SolutionSpace:
    """Normalized non-unimodular frame; the label carries the Milnor invariant D."""
    alg = NonUnimodularSpec(xi, eta).algebra()
    space = kernel(build_system(alg, InnerProduct.orthonormal(3)), tolerances)
    return _labelled(space, "nonuni", invariant=nonuni_milnor_invariant(xi, eta))


def classify_product(nu2: float, tolerances: Tolerances | None = None) -> SolutionSpace:
    """Product of the 2D solvable group with a line, [e3, e1] = -(1/nu2) e3."""
    if not (math.isfinite(nu2) and nu2 > 0):
        raise InputError(f"nu2 must be a positive number, got {nu2}")
    alg = preset("product_g2d_r", [nu2])
    return classify(alg, None, tolerances, label="nonuni")


def contains(space: SolutionSpace, cubic: CubicForm, tol: float = 1e-8) -> tuple[bool, float]:
    """Orthogonal distance from ``cubic`` to the span of ``space``; flag iff <= tol * |cubic|."""
    x = cubic.values
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return True, 0.0
    q = space.orthonormal
    if q.shape[1] != x.size:
        raise InputError(f"cubic has {x.size} components, solution space uses {q.shape[1]}")
    residual = x - q.T @ (q @ x) if len(q) else x
    distance = float(np.linalg.norm(residual))
    return distance <= tol * norm, distance


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def parse_grid(text: str) -> list[float]:
    """``lo:hi:step`` -> [lo, lo+step, ..., <= hi], values rounded to 12 significant digits."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid {text!r}: expected lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"grid {text!r}: bounds must be numbers") from exc
    if not all(math.isfinite(v) for v in (lo, hi, step)):
        raise InputError(f"grid {text!r}: bounds must be finite")
    if step <= 0:
        raise InputError(f"grid {text!r}: step must be positive")
    if hi < lo:
        raise InputError(f"grid {text!r}: empty range (hi < lo)")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [float(f"{lo + n * step:.12g}") for n in range(count)]


def _sweep_points(family: str, grid: Sequence[float]) -> list[tuple[float, ...]]:
    if family == "milnor":
        return [(1.0, t, 1.0) for t in grid]
    if family == "nonuni":
        return [(xi, eta) for xi in grid for eta in grid]
    return [(nu2,) for nu2 in grid]


def _sweep_point(family: str, params: tuple[float, ...], tol: Tolerances) -> SweepRow:
    try:
        if family == "milnor":
            space = classify_unimodular(*params, tolerances=tol)
        elif family == "nonuni":
            space = classify_nonunimodular(*params, tolerances=tol)
        else:
            space = classify_product(params[0], tolerances=tol)
    except (InputError, ValidationError) as exc:
        logger.info("sweep point %s failed: %s", params, exc)
        return SweepRow(params, None, "", error=str(exc))
    return SweepRow(params, space.dim, space.label)


def sweep(
    family: str, grid: Sequence[float], tolerances: Tolerances | None = None,
) -> list[SweepRow]:
    """
    Kernel dimension over a parameter grid.

    milnor: the ray (1, t, 1); nonuni: the product grid xi x eta; product: nu2.
    Rows come back in grid order whatever ``sweep_workers`` is.
    """
    if family not in SWEEP_FAMILIES:
        raise InputError(f"unknown sweep family {family!r}; expected one of {', '.join(SWEEP_FAMILIES)}")
    if not grid:
        raise InputError("sweep grid is empty")
    tol = tolerances or Tolerances()
    points = _sweep_points(family, grid)
    logger.debug("sweeping %s over %d points with %d worker(s)", family, len(points), tol.sweep_workers)
    if tol.sweep_workers > 1:
        with ThreadPoolExecutor(max_workers=tol.sweep_workers) as pool:
            return list(pool.map(lambda p: _sweep_point(family, p, tol), points))
    return [_sweep_point(family, p, tol) for p in points]
