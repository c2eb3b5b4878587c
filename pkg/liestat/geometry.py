"""
Left-invariant metric geometry
==============================
Everything here works in a left-invariant frame {e_i}: metric coefficients and
connection coefficients are constants, so covariant derivatives reduce to
contractions with the connection array and curvature has no derivative terms.

Array conventions (0-based):

    gram[i, j]        g(e_i, e_j)
    gamma[k, i, j]    component k of  nabla_{e_i} e_j
    r[l, k, i, j]     component l of  R(e_i, e_j) e_k,  R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]

Index raising solves against the Gram matrix; nothing is inverted explicitly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from liestat.algebra import LieAlgebra
from liestat.errors import InputError, ValidationError

logger = logging.getLogger(__name__)

PD_TOL = 1e-12
PLANE_TOL = 1e-12   # relative to |X|^2 |Y|^2


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InnerProduct:
    """Gram matrix of the frame; symmetric positive definite."""
    gram: np.ndarray

    def __post_init__(self) -> None:
        g = np.array(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InputError(f"Gram matrix must be square, got shape {g.shape}")
        if float(np.max(np.abs(g - g.T))) > 1e-12:
            raise ValidationError("gram-symmetry", "Gram matrix is not symmetric")
        for m in range(1, g.shape[0] + 1):
            minor = float(np.linalg.det(g[:m, :m]))
            if minor <= PD_TOL:
                raise ValidationError(
                    "positive-definite",
                    f"leading principal minor of order {m} is {minor:.3e}",
                )
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)

    @classmethod
    def orthonormal(cls, dim: int) -> "InnerProduct":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.gram, np.eye(self.dim)))

    def inner(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def raise_last(self, lowered: np.ndarray) -> np.ndarray:
        """Raise the last index: solves gram @ v = w along the final axis."""
        arr = np.asarray(lowered, dtype=float)
        flat = arr.reshape(-1, self.dim).T
        solved = scipy.linalg.solve(self.gram, flat, assume_a="pos")
        return solved.T.reshape(arr.shape)

    def inverse(self) -> np.ndarray:
        """g^{ij}, obtained by solving against the identity."""
        return scipy.linalg.solve(self.gram, np.eye(self.dim), assume_a="pos")


@dataclass(frozen=True, eq=False)
class Connection:
    """Left-invariant connection; ``gamma[k, i, j]`` is component k of nabla_{e_i} e_j."""
    gamma: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        g = np.array(self.gamma, dtype=float)
        if g.ndim != 3 or not (g.shape[0] == g.shape[1] == g.shape[2]):
            raise InputError(f"connection coefficients must be (n, n, n), got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def apply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """nabla_x y for constant-coefficient vectors."""
        return np.einsum("kij,i,j->k", self.gamma, x, y)

    def shifted(self, difference: np.ndarray, label: str = "") -> "Connection":
        """nabla + S for a (1,2) tensor S[k, i, j] = component k of S(e_i) e_j."""
        return Connection(self.gamma + difference, label=label)


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """``r[l, k, i, j]`` is component l of R(e_i, e_j) e_k."""
    r: np.ndarray

    @property
    def dim(self) -> int:
        return self.r.shape[0]

    def apply(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """R(x, y) z."""
        return np.einsum("lkij,i,j,k->l", self.r, x, y, z)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.r))) if self.r.size else 0.0


# ---------------------------------------------------------------------------
# Connections
# ---------------------------------------------------------------------------

def _check_dims(alg: LieAlgebra, ip: InnerProduct) -> None:
    if alg.dim != ip.dim:
        raise InputError(f"algebra has dim {alg.dim} but Gram matrix is {ip.dim}x{ip.dim}")


def u_map(alg: LieAlgebra, ip: InnerProduct) -> np.ndarray:
    """
    U[k, i, j], symmetric in (i, j), defined by
    2 <U(X,Y), Z> = <X, [Z,Y]> + <Y, [Z,X]>.
    """
    _check_dims(alg, ip)
    g, c = ip.gram, alg.c
    # lowered[i, j, z] = <U(e_i, e_j), e_z>
    lowered = 0.5 * (np.einsum("im,mzj->ijz", g, c) + np.einsum("jm,mzi->ijz", g, c))
    return np.moveaxis(ip.raise_last(lowered), -1, 0)


def levi_civita(alg: LieAlgebra, ip: InnerProduct) -> Connection:
    """nabla^g_X Y = 1/2 [X, Y] + U(X, Y)."""
    return Connection(0.5 * alg.c + u_map(alg, ip), label="levi-civita")


def cartan_schouten(alg: LieAlgebra, t: float) -> Connection:
    """nabla_X Y = 1/2 (1 + t) [X, Y]; t = -1, 0, 1 give the (-), (0), (+) connections."""
    return Connection(0.5 * (1.0 + t) * alg.c, label=f"cartan-schouten({t:g})")


def torsion(alg: LieAlgebra, conn: Connection) -> np.ndarray:
    """T[k, i, j] = component k of nabla_{e_i} e_j - nabla_{e_j} e_i - [e_i, e_j]."""
    g = conn.gamma
    return g - g.transpose(0, 2, 1) - alg.c


def metric_defect(ip: InnerProduct, conn: Connection) -> np.ndarray:
    """(nabla_{e_i} g)(e_j, e_k) as an array [i, j, k]."""
    low = lower_connection(ip, conn)
    return -(low + low.transpose(0, 2, 1))


def lower_connection(ip: InnerProduct, conn: Connection) -> np.ndarray:
    """low[i, j, k] = g(nabla_{e_i} e_j, e_k)."""
    return np.einsum("mij,mk->ijk", conn.gamma, ip.gram)


def covariant_derivative(conn: Connection, tensor: np.ndarray, upper: int = 0) -> np.ndarray:
    """
    Covariant derivative of a constant-frame tensor.

    ``tensor`` has its ``upper`` contravariant axes first, then the covariant
    ones. The result carries the derivative direction as a new leading axis:
    out[i, ...] = (nabla_{e_i} tensor)(...).
    """
    gamma = conn.gamma
    t = np.asarray(tensor, dtype=float)
    n = conn.dim
    out = np.zeros((n,) + t.shape)
    for axis in range(t.ndim):
        if axis < upper:
            # + gamma[a, i, m] t[..., m, ...]
            term = np.tensordot(gamma, t, axes=([2], [axis]))
            out += np.moveaxis(term, 0, axis + 1)
        else:
            # - gamma[m, i, b] t[..., m, ...]
            term = np.tensordot(gamma, t, axes=([0], [axis]))
            out -= np.moveaxis(term, 1, axis + 1)
    return out


# ---------------------------------------------------------------------------
# Curvature
# ---------------------------------------------------------------------------

def operator_commutator(a: np.ndarray, b: np.ndarray | None = None) -> np.ndarray:
    """
    out[l, k, i, j] = component l of (A(e_i) B(e_j) - A(e_j) B(e_i)) e_k
    for (1,2) tensors A, B stored as [l, i, j] = component l of A(e_i) e_j.
    """
    b = a if b is None else b
    comp = np.einsum("lim,mjk->lkij", a, b)
    return comp - comp.transpose(0, 1, 3, 2)


def curvature(alg: LieAlgebra, conn: Connection) -> CurvatureTensor:
    """R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y] on left-invariant fields."""
    if alg.dim != conn.dim:
        raise InputError(f"algebra dim {alg.dim} does not match connection dim {conn.dim}")
    g = conn.gamma
    r = operator_commutator(g) - np.einsum("mij,lmk->lkij", alg.c, g)
    return CurvatureTensor(r)


def ricci(alg: LieAlgebra, conn: Connection) -> np.ndarray:
    """Ric(Y, Z) = tr(X -> R(X, Y) Z); ric[j, k] for Y = e_j, Z = e_k."""
    return np.einsum("ikij->jk", curvature(alg, conn).r)


def scalar_curvature(alg: LieAlgebra, ip: InnerProduct, conn: Connection) -> float:
    """rho = tr_g Ric."""
    _check_dims(alg, ip)
    ric = ricci(alg, conn)
    return float(np.trace(scipy.linalg.solve(ip.gram, ric, assume_a="pos")))


def ricci_symmetric(alg: LieAlgebra, conn: Connection, tol: float = 1e-9) -> tuple[bool, float]:
    ric = ricci(alg, conn)
    defect = float(np.max(np.abs(ric - ric.T)))
    return defect <= tol, defect


def lower_curvature(ip: InnerProduct, curv: CurvatureTensor) -> np.ndarray:
    """low[l, k, i, j] = g(R(e_i, e_j) e_k, e_l)."""
    return np.einsum("mkij,ml->lkij", curv.r, ip.gram)


def sectional_curvature(
    alg: LieAlgebra,
    ip: InnerProduct,
    curv: CurvatureTensor,
    x: Sequence[float] | np.ndarray,
    y: Sequence[float] | np.ndarray,
) -> float:
    """g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)."""
    _check_dims(alg, ip)
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.shape != (alg.dim,) or yv.shape != (alg.dim,):
        raise InputError(f"plane vectors must have length {alg.dim}")
    xx, yy = ip.inner(xv, xv), ip.inner(yv, yv)
    denom = xx * yy - ip.inner(xv, yv) ** 2
    if denom <= PLANE_TOL * xx * yy:
        raise ValidationError("plane", f"vectors span a degenerate plane (area^2 = {denom:.3e})")
    return ip.inner(curv.apply(xv, yv, yv), xv) / denom


def coordinate_sectionals(alg: LieAlgebra, ip: InnerProduct, curv: CurvatureTensor) -> dict[str, float]:
    """Sectional values on the coordinate planes e_i ^ e_j, keyed "ij" (1-based)."""
    basis = np.eye(alg.dim)
    out: dict[str, float] = {}
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            out[f"{i + 1}{j + 1}"] = sectional_curvature(alg, ip, curv, basis[i], basis[j])
    return out
