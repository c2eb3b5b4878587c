"""
Lie algebras by structure constants
===================================
A Lie algebra is stored as a dense array ``c[k, i, j]`` with

    [e_i, e_j] = sum_k c[k, i, j] e_k

Indices are 0-based here; files and reports use 1-based indices.

The preset catalog covers every frame used elsewhere in the package:
Milnor frames of unimodular 3D algebras, the normalized non-unimodular
family, the 2D solvable algebra, its product with a line and the
Sasakian family G(c).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from liestat.errors import InputError, ValidationError

logger = logging.getLogger(__name__)

VALIDITY_TOL = 1e-9


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional real Lie algebra; validated and read-only after construction."""
    c: np.ndarray
    name: str = "raw"
    params: tuple[float, ...] = field(default=())
    tol: float = field(default=VALIDITY_TOL, repr=False)

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=float)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] == 0:
            raise InputError(f"structure constants must have shape (n, n, n), got {c.shape}")
        asym = float(np.max(np.abs(c + c.transpose(0, 2, 1))))
        if asym > self.tol:
            raise ValidationError("antisymmetry", f"max |c^k_ij + c^k_ji| = {asym:.3e}")
        jac = _jacobi(c)
        if jac > self.tol:
            raise ValidationError("jacobi", f"Jacobi defect {jac:.3e} exceeds {self.tol:g}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def __repr__(self) -> str:
        return f"LieAlgebra(name={self.name!r}, params={self.params}, dim={self.dim})"


@dataclass(frozen=True)
class MilnorFrameSpec:
    """Diagonal unimodular frame: [e2,e3]=c1 e1, [e3,e1]=c2 e2, [e1,e2]=c3 e3."""
    c1: float
    c2: float
    c3: float

    def algebra(self) -> LieAlgebra:
        c = np.zeros((3, 3, 3))
        _set_bracket(c, 1, 2, 0, self.c1)
        _set_bracket(c, 2, 0, 1, self.c2)
        _set_bracket(c, 0, 1, 2, self.c3)
        return LieAlgebra(c, name="milnor", params=(self.c1, self.c2, self.c3))

    @property
    def lambdas(self) -> tuple[float, float, float]:
        """lambda_j = (c1+c2+c3)/2 - c_j, the Levi-Civita coefficients of the frame."""
        half = (self.c1 + self.c2 + self.c3) / 2.0
        return (half - self.c1, half - self.c2, half - self.c3)


@dataclass(frozen=True)
class NonUnimodularSpec:
    """Normalized non-unimodular frame with parameters xi, eta >= 0."""
    xi: float
    eta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.xi) and math.isfinite(self.eta)):
            raise InputError(f"nonuni parameters must be finite, got ({self.xi}, {self.eta})")
        if self.xi < 0 or self.eta < 0:
            raise InputError(f"nonuni requires xi >= 0 and eta >= 0, got ({self.xi}, {self.eta})")

    @property
    def matrix(self) -> np.ndarray:
        """ad(e1) restricted to span{e2, e3}."""
        xi, eta = self.xi, self.eta
        return np.array([
            [1.0 + xi, -(1.0 - xi) * eta],
            [(1.0 + xi) * eta, 1.0 - xi],
        ])

    def algebra(self) -> LieAlgebra:
        xi, eta = self.xi, self.eta
        c = np.zeros((3, 3, 3))
        # [e1,e2] = (1+xi)(e2 + eta e3)
        _set_bracket(c, 0, 1, 1, 1.0 + xi)
        _set_bracket(c, 0, 1, 2, (1.0 + xi) * eta)
        # [e3,e1] = (1-xi)(eta e2 - e3)
        _set_bracket(c, 2, 0, 1, (1.0 - xi) * eta)
        _set_bracket(c, 2, 0, 2, -(1.0 - xi))
        return LieAlgebra(c, name="nonuni", params=(xi, eta))


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------

def _set_bracket(c: np.ndarray, i: int, j: int, k: int, value: float) -> None:
    c[k, i, j] = value
    c[k, j, i] = -value


def _jacobi(c: np.ndarray) -> float:
    # a[l,i,j,k] = component l of [[e_i,e_j],e_k]
    a = np.einsum("mij,lmk->lijk", c, c)
    cyc = a + np.einsum("ljki->lijk", a) + np.einsum("lkij->lijk", a)
    return float(np.max(np.abs(cyc))) if cyc.size else 0.0


def _check_vector(alg: LieAlgebra, v: Sequence[float] | np.ndarray, label: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (alg.dim,):
        raise InputError(f"{label} must have length {alg.dim}, got shape {arr.shape}")
    return arr


def bracket(alg: LieAlgebra, x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray) -> np.ndarray:
    """[x, y] = sum c^k_ij x^i y^j e_k."""
    xv = _check_vector(alg, x, "x")
    yv = _check_vector(alg, y, "y")
    return np.einsum("kij,i,j->k", alg.c, xv, yv)


def jacobi_defect(alg: LieAlgebra | np.ndarray) -> float:
    """
    Max-abs over basis triples of [[e_i,e_j],e_k] + cyclic.

    Accepts a raw ``c`` array as well, so that corrupted structure constants
    can be measured before LieAlgebra rejects them.
    """
    c = alg.c if isinstance(alg, LieAlgebra) else np.asarray(alg, dtype=float)
    return _jacobi(c)


def ad_matrix(alg: LieAlgebra, x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Matrix of ad(x); column j holds [x, e_j]."""
    xv = _check_vector(alg, x, "x")
    return np.einsum("kij,i->kj", alg.c, xv)


def unimodular_kernel(alg: LieAlgebra, tol: float = VALIDITY_TOL) -> tuple[bool, list[np.ndarray]]:
    """
    Kernel of the linear form X -> tr ad(X).

    The basis is returned in reduced echelon form so it is stable across runs.
    """
    form = np.einsum("kik->i", alg.c)
    if float(np.max(np.abs(form))) <= tol:
        return True, [row for row in np.eye(alg.dim)]
    null = scipy.linalg.null_space(form.reshape(1, -1))
    basis = echelon_rows(null.T)
    logger.debug("unimodular kernel of %r has dim %d", alg, len(basis))
    return False, [row for row in basis]


def is_subalgebra_ideal(alg: LieAlgebra, basis: np.ndarray, tol: float = VALIDITY_TOL) -> tuple[bool, float]:
    """
    Ideal test for span(basis rows): [e_i, v] must stay in the span.
    Returns (flag, defect), the defect being the largest residual norm.
    """
    b = np.atleast_2d(np.asarray(basis, dtype=float))
    q, _ = np.linalg.qr(b.T)
    proj = q @ q.T
    defect = 0.0
    for i in range(alg.dim):
        for v in b:
            w = bracket(alg, np.eye(alg.dim)[i], v)
            defect = max(defect, float(np.linalg.norm(w - proj @ w)))
    return defect <= tol, defect


def echelon_rows(rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """
    Reduced row echelon form of the row space of ``rows`` with leading entries +1.

    Entries below 1e-13 in magnitude are snapped to zero so that identical
    subspaces produce byte-identical output.
    """
    m = np.array(rows, dtype=float, copy=True)
    if m.size == 0:
        return m.reshape(0, m.shape[-1] if m.ndim == 2 else 0)
    n_rows, n_cols = m.shape
    scale = max(float(np.max(np.abs(m))), 1.0)
    pivot_row = 0
    for col in range(n_cols):
        if pivot_row >= n_rows:
            break
        candidate = pivot_row + int(np.argmax(np.abs(m[pivot_row:, col])))
        if abs(m[candidate, col]) <= tol * scale:
            continue
        m[[pivot_row, candidate]] = m[[candidate, pivot_row]]
        m[pivot_row] /= m[pivot_row, col]
        for r in range(n_rows):
            if r != pivot_row:
                m[r] -= m[r, col] * m[pivot_row]
        pivot_row += 1
    m = m[:pivot_row]
    m[np.abs(m) < 1e-13] = 0.0
    return m + 0.0  # drop negative zeros


def change_frame(alg: LieAlgebra, p: np.ndarray) -> LieAlgebra:
    """Structure constants in the frame f_a = sum_i p[i, a] e_i."""
    p = np.asarray(p, dtype=float)
    if p.shape != (alg.dim, alg.dim):
        raise InputError(f"frame change must be {alg.dim}x{alg.dim}, got {p.shape}")
    p_inv = scipy.linalg.inv(p)
    c = np.einsum("dk,kij,ia,jb->dab", p_inv, alg.c, p, p)
    return LieAlgebra(c, name=alg.name, params=alg.params, tol=alg.tol)


# ---------------------------------------------------------------------------
# Milnor signature
# ---------------------------------------------------------------------------

def milnor_label(c1: float, c2: float, c3: float, tol: float = VALIDITY_TOL) -> str:
    """Class of a unimodular Milnor frame from the signs of (c1, c2, c3)."""
    signs = [0 if abs(v) <= tol else (1 if v > 0 else -1) for v in (c1, c2, c3)]
    pos, neg = signs.count(1), signs.count(-1)
    if pos < neg:
        pos, neg = neg, pos
    zeros = 3 - pos - neg
    if zeros == 3:
        return "r3"
    if zeros == 2:
        return "nil3"
    if zeros == 1:
        return "e2" if neg == 0 else "e11"
    return "su2" if neg == 0 else "sl2r"


def class_label(alg: LieAlgebra, tol: float = VALIDITY_TOL) -> str:
    """Label used in reports: Milnor signature for milnor-like presets, else a family tag."""
    if alg.name == "milnor":
        return milnor_label(*alg.params, tol=tol)
    if alg.name == "sasaki_g":
        c = alg.params[0]
        return milnor_label((c + 3) / 2, (c + 3) / 2, 2.0, tol=tol)
    if alg.name == "r3":
        return "r3"
    if alg.name in ("nonuni", "product_g2d_r"):
        return "nonuni"
    if alg.name == "g2d":
        return "aff"
    unimodular, _ = unimodular_kernel(alg, tol)
    return "unimodular" if unimodular else "nonuni"


def milnor_invariant(alg: LieAlgebra) -> float:
    """
    det of ad(X) restricted to the unimodular kernel, with X orthogonal to the
    kernel and normalized so that tr ad(X) = 2. For nonuni(xi, eta) this is
    (1 - xi^2)(1 + eta^2).
    """
    unimodular, kernel_rows = unimodular_kernel(alg)
    if unimodular:
        raise ValidationError("non-unimodular", f"{alg!r} is unimodular; Milnor invariant undefined")
    basis = np.array(kernel_rows).T
    form = np.einsum("kik->i", alg.c)
    x = form / float(form @ form) * 2.0
    restricted = np.linalg.lstsq(basis, ad_matrix(alg, x) @ basis, rcond=None)[0]
    return float(np.linalg.det(restricted))


def nonuni_milnor_invariant(xi: float, eta: float) -> float:
    """D = (1 - xi^2)(1 + eta^2)."""
    return (1.0 - xi * xi) * (1.0 + eta * eta)


# ---------------------------------------------------------------------------
# Preset catalog
# ---------------------------------------------------------------------------

def _milnor(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 3, "milnor")
    return MilnorFrameSpec(*params).algebra()


def _nonuni(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 2, "nonuni")
    return NonUnimodularSpec(*params).algebra()


def _g2d(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 1, "g2d")
    nu2 = _positive(params[0], "g2d", "nu2")
    c = np.zeros((2, 2, 2))
    _set_bracket(c, 0, 1, 0, -1.0 / nu2)
    return LieAlgebra(c, name="g2d", params=(nu2,))


def _product_g2d_r(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 1, "product_g2d_r")
    nu2 = _positive(params[0], "product_g2d_r", "nu2")
    c = np.zeros((3, 3, 3))
    _set_bracket(c, 2, 0, 2, -1.0 / nu2)
    return LieAlgebra(c, name="product_g2d_r", params=(nu2,))


def _sasaki_g(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 1, "sasaki_g")
    cval = float(params[0])
    c = np.zeros((3, 3, 3))
    _set_bracket(c, 0, 1, 2, 2.0)
    _set_bracket(c, 1, 2, 0, (cval + 3.0) / 2.0)
    _set_bracket(c, 2, 0, 1, (cval + 3.0) / 2.0)
    return LieAlgebra(c, name="sasaki_g", params=(cval,))


def _r3(params: Sequence[float]) -> LieAlgebra:
    _expect(params, 0, "r3")
    return LieAlgebra(np.zeros((3, 3, 3)), name="r3")


def _expect(params: Sequence[float], n: int, name: str) -> None:
    if len(params) != n:
        raise InputError(f"preset {name!r} takes {n} parameter(s), got {len(params)}")
    for p in params:
        if not math.isfinite(float(p)):
            raise InputError(f"preset {name!r}: parameters must be finite, got {list(params)}")


def _positive(value: float, name: str, label: str) -> float:
    v = float(value)
    if v <= 0:
        raise InputError(f"preset {name!r}: {label} must be > 0, got {v}")
    return v


PRESETS: dict[str, Callable[[Sequence[float]], LieAlgebra]] = {
    "milnor":        _milnor,
    "nonuni":        _nonuni,
    "g2d":           _g2d,
    "product_g2d_r": _product_g2d_r,
    "sasaki_g":      _sasaki_g,
    "r3":            _r3,
}

# alias -> (family, params)
ALIASES: dict[str, tuple[str, tuple[float, ...]]] = {
    "su2":         ("milnor", (2.0, 2.0, 2.0)),
    "so3":         ("milnor", (2.0, 2.0, 2.0)),
    "sl2r":        ("milnor", (1.0, 1.0, -1.0)),
    "e2":          ("milnor", (1.0, 1.0, 0.0)),
    "e11":         ("milnor", (1.0, -1.0, 0.0)),
    "nil3":        ("milnor", (1.0, 0.0, 0.0)),
    "hyperbolic3": ("nonuni", (0.0, 0.0)),
    "h2xr":        ("nonuni", (1.0, 0.0)),
}


def preset(name: str, params: Sequence[float] = (), tol: float = VALIDITY_TOL) -> LieAlgebra:
    """
    Frame-level algebra for a named family (see PRESETS and ALIASES).
    ``tol`` bounds the antisymmetry and Jacobi defects of the result.
    """
    key = name.strip().lower()
    if key in ALIASES:
        if params:
            raise InputError(f"alias {name!r} takes no parameters")
        key, params = ALIASES[key]
    builder = PRESETS.get(key)
    if builder is None:
        known = ", ".join(sorted([*PRESETS, *ALIASES]))
        raise InputError(f"unknown preset {name!r}; known presets: {known}")
    alg = builder([float(p) for p in params])
    if tol != alg.tol:
        alg = replace(alg, tol=tol)
    logger.debug("built preset %r", alg)
    return alg
