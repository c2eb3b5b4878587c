"""
Statistical structures on Lie groups
====================================
A left-invariant statistical structure is a triple (algebra, metric, cubic
form). Its connection is nabla = nabla^g - K/2, and the alpha-family is

    nabla^(alpha) = nabla^g - (alpha/2) K

so alpha = 1 is nabla, alpha = -1 its dual, alpha = 0 the Levi-Civita
connection. All checks below return max-abs defects over basis indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from liestat.algebra import LieAlgebra, is_subalgebra_ideal
from liestat.cubic import CubicForm, skewness_from_cubic
from liestat.errors import InputError, ValidationError
from liestat.geometry import (
    Connection,
    CurvatureTensor,
    InnerProduct,
    cartan_schouten,
    covariant_derivative,
    curvature,
    levi_civita,
    metric_defect,
    operator_commutator,
    ricci,
    sectional_curvature,
    torsion,
    u_map,
)

logger = logging.getLogger(__name__)

TensorField = tuple[np.ndarray, int]   # (constant-frame components, number of upper indices)


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StatisticalStructure:
    alg: LieAlgebra
    ip: InnerProduct
    cubic: CubicForm

    def __post_init__(self) -> None:
        if not (self.alg.dim == self.ip.dim == self.cubic.dim):
            raise InputError(
                f"dimension mismatch: algebra {self.alg.dim}, metric {self.ip.dim}, cubic {self.cubic.dim}"
            )

    @property
    def dim(self) -> int:
        return self.alg.dim

    @cached_property
    def levi_civita(self) -> Connection:
        return levi_civita(self.alg, self.ip)

    @cached_property
    def skewness(self) -> np.ndarray:
        return skewness_from_cubic(self.ip, self.cubic)

    def scaled(self, factor: float) -> "StatisticalStructure":
        return StatisticalStructure(self.alg, self.ip, self.cubic * factor)


@dataclass(frozen=True, eq=False)
class SasakianData:
    """Contact metric data on a 3-dimensional algebra; ``phi[:, j]`` is phi(e_j)."""
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self) -> None:
        phi = np.array(self.phi, dtype=float)
        xi = np.array(self.xi, dtype=float)
        eta = np.array(self.eta, dtype=float)
        if phi.shape != (3, 3) or xi.shape != (3,) or eta.shape != (3,):
            raise InputError("Sasakian data needs phi 3x3, xi and eta of length 3")
        for arr in (phi, xi, eta):
            arr.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    @classmethod
    def for_sasaki_g(cls) -> "SasakianData":
        """phi e1 = e2, phi e2 = -e1, phi e3 = 0, xi = e3, eta = e3^flat."""
        phi = np.array([
            [0.0, -1.0, 0.0],
            [1.0,  0.0, 0.0],
            [0.0,  0.0, 0.0],
        ])
        return cls(phi, np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, 1.0]))


# ---------------------------------------------------------------------------
# Connections
# ---------------------------------------------------------------------------

def statistical_connection(stat: StatisticalStructure, alpha: float) -> Connection:
    """nabla^(alpha) = nabla^g - (alpha/2) K."""
    gamma = stat.levi_civita.gamma - 0.5 * alpha * stat.skewness
    return Connection(gamma, label=f"alpha({alpha:g})")


def dual_connection(ip: InnerProduct, conn: Connection) -> Connection:
    """The connection nabla* with g(nabla_X Y, Z) + g(Y, nabla*_X Z) = 0 on frame fields."""
    if ip.dim != conn.dim:
        raise InputError(f"metric dim {ip.dim} does not match connection dim {conn.dim}")
    low = np.einsum("mij,mk->ijk", conn.gamma, ip.gram)
    dual_low = -low.transpose(0, 2, 1)
    return Connection(np.moveaxis(ip.raise_last(dual_low), -1, 0), label="dual")


def is_statistical(
    alg: LieAlgebra, ip: InnerProduct, conn: Connection, tol: float = 1e-9,
) -> tuple[bool, float]:
    """Torsion-free and nabla g totally symmetric."""
    tor = float(np.max(np.abs(torsion(alg, conn))))
    ng = metric_defect(ip, conn)
    codazzi = float(np.max(np.abs(ng - ng.transpose(1, 0, 2))))
    defect = max(tor, codazzi)
    return defect <= tol, defect


# ---------------------------------------------------------------------------
# Conditions through the bilinear map of a connection
# ---------------------------------------------------------------------------

def symmetric_part(conn: Connection) -> np.ndarray:
    """nu[k, i, j] = component k of 1/2 (nabla_{e_i} e_j + nabla_{e_j} e_i)."""
    return 0.5 * (conn.gamma + conn.gamma.transpose(0, 2, 1))


def symmetric_part_defect(alg: LieAlgebra, ip: InnerProduct, conn: Connection) -> float:
    """
    Statistical condition on nabla_X Y = mu(X, Y) written through nu = sym(mu):

        skew(mu) = 1/2 [., .]
        <U(Y,Z), X> - <U(X,Z), Y> = <nu(Y,Z), X> - <nu(X,Z), Y>

    Zero exactly when ``is_statistical`` holds; then -K/2 = nu - U.
    """
    if conn.dim != alg.dim or ip.dim != alg.dim:
        raise InputError("algebra, metric and connection dimensions differ")
    skew = 0.5 * (conn.gamma - conn.gamma.transpose(0, 2, 1)) - 0.5 * alg.c
    # low[x, y, z] = <(U - nu)(e_y, e_z), e_x>
    low = np.einsum("kyz,kx->xyz", u_map(alg, ip) - symmetric_part(conn), ip.gram)
    return max(float(np.max(np.abs(skew))), float(np.max(np.abs(low - low.transpose(1, 0, 2)))))


def is_bi_invariant(stat: StatisticalStructure, tol: float = 1e-9) -> tuple[bool, dict[str, float]]:
    """
    Bi-invariant statistical structure: g and C are ad-invariant and
    nabla = -K/2 + [., .]/2. Ad-invariance is parallelism under nabla_X Y = [X, Y].
    """
    plus = cartan_schouten(stat.alg, 1.0)
    defects = ambrose_singer_check(
        stat.alg, stat.ip, plus, {"g": (np.asarray(stat.ip.gram), 0), "C": (stat.cubic.tensor(), 0)}
    )
    expected = -0.5 * stat.skewness + 0.5 * stat.alg.c
    defects["connection"] = float(np.max(np.abs(statistical_connection(stat, 1.0).gamma - expected)))
    return all(v <= tol for v in defects.values()), defects


# ---------------------------------------------------------------------------
# Conjugate symmetry and curvature
# ---------------------------------------------------------------------------

def _skewness_antisymmetrization(stat: StatisticalStructure) -> np.ndarray:
    """
    out[l, k, i, j] = component l of (nabla^g_{e_i} K)(e_j, e_k) - (nabla^g_{e_j} K)(e_i, e_k).
    This is R* - R for the alpha = 1 pair.
    """
    d = covariant_derivative(stat.levi_civita, stat.skewness, upper=1)   # d[i, l, j, k]
    asym = d - d.transpose(2, 1, 0, 3)
    return np.einsum("iljk->lkij", asym)


def conjugate_symmetry_defect(stat: StatisticalStructure) -> float:
    """Zero exactly when nabla^g K is totally symmetric (equivalently R = R*)."""
    return float(np.max(np.abs(_skewness_antisymmetrization(stat))))


def curvature_pair(stat: StatisticalStructure, alpha: float) -> tuple[CurvatureTensor, CurvatureTensor]:
    """Curvatures of nabla^(alpha) and of its dual nabla^(-alpha)."""
    return (
        curvature(stat.alg, statistical_connection(stat, alpha)),
        curvature(stat.alg, statistical_connection(stat, -alpha)),
    )


def alpha_curvature_decomposition(stat: StatisticalStructure, alpha: float) -> CurvatureTensor:
    """R^g + (alpha^2/4)[K(X), K(Y)] - (alpha/2)((nabla^g_X K)(Y, .) - (nabla^g_Y K)(X, .))."""
    r_g = curvature(stat.alg, stat.levi_civita).r
    comm = operator_commutator(stat.skewness)
    return CurvatureTensor(
        r_g + 0.25 * alpha * alpha * comm - 0.5 * alpha * _skewness_antisymmetrization(stat)
    )


def statistical_curvature(stat: StatisticalStructure, alpha: float = 1.0) -> CurvatureTensor:
    """R^S = (R^(alpha) + R^(-alpha)) / 2."""
    r, r_dual = curvature_pair(stat, alpha)
    return CurvatureTensor(0.5 * (r.r + r_dual.r))


def statistical_sectional_curvature(
    stat: StatisticalStructure,
    alpha: float,
    x: Sequence[float] | np.ndarray,
    y: Sequence[float] | np.ndarray,
) -> float:
    """Sectional quotient of R^S; well defined for every statistical structure."""
    return sectional_curvature(stat.alg, stat.ip, statistical_curvature(stat, alpha), x, y)


def alpha_sectional_curvature(
    stat: StatisticalStructure,
    alpha: float,
    x: Sequence[float] | np.ndarray,
    y: Sequence[float] | np.ndarray,
    tol: float = 1e-9,
) -> tuple[float, bool]:
    """
    Frame value of the sectional quotient of R^(alpha) and whether it is an
    invariant (the structure is conjugate symmetric or alpha = 0).
    """
    invariant = alpha == 0 or conjugate_symmetry_defect(stat) <= tol
    if not invariant:
        logger.warning(
            "sectional curvature of alpha=%g on a non-conjugate-symmetric structure is frame-dependent",
            alpha,
        )
    r, _ = curvature_pair(stat, alpha)
    return sectional_curvature(stat.alg, stat.ip, r, x, y), invariant


def constant_curvature_tensor(ip: InnerProduct) -> np.ndarray:
    """b[l, k, i, j] = component l of g(e_j, e_k) e_i - g(e_k, e_i) e_j."""
    g = ip.gram
    eye = np.eye(ip.dim)
    return np.einsum("jk,li->lkij", g, eye) - np.einsum("ki,lj->lkij", g, eye)


def constant_curvature_fit(
    stat: StatisticalStructure, alpha: float, ip: InnerProduct | None = None,
) -> tuple[float, float]:
    """Least-squares k in R^(alpha) = k (g(Y,Z)X - g(Z,X)Y); returns (k, max-abs residual)."""
    metric = ip if ip is not None else stat.ip
    r = curvature(stat.alg, statistical_connection(stat, alpha)).r
    b = constant_curvature_tensor(metric)
    k = float(np.sum(r * b) / np.sum(b * b))
    residual = float(np.max(np.abs(r - k * b)))
    return k, residual


# ---------------------------------------------------------------------------
# Apolarity, tension, Hessian curvature
# ---------------------------------------------------------------------------

def apolarity(stat: StatisticalStructure) -> tuple[np.ndarray, np.ndarray]:
    """tau(e_i) = -1/2 tr K(e_i) and E = -1/2 tr_g K."""
    k = stat.skewness
    tau = -0.5 * np.einsum("lil->i", k)
    e_vec = -0.5 * np.einsum("ij,lij->l", stat.ip.inverse(), k)
    return tau, e_vec


def trace_skewness(stat: StatisticalStructure) -> np.ndarray:
    """tr_g K = sum g^{ij} K(e_i) e_j."""
    return np.einsum("ij,lij->l", stat.ip.inverse(), stat.skewness)


def identity_tension(stat: StatisticalStructure) -> np.ndarray:
    """Statistical tension field of the identity map, -2 tr_g K."""
    return -2.0 * trace_skewness(stat)


def equiaffine_check(stat: StatisticalStructure, tol: float = 1e-9) -> tuple[bool, float]:
    tau, _ = apolarity(stat)
    norm = float(np.linalg.norm(tau))
    return norm <= tol, norm


def is_hessian(stat: StatisticalStructure, alpha: float = 1.0, tol: float = 1e-9) -> tuple[bool, float]:
    """Flatness of nabla^(alpha)."""
    r = curvature(stat.alg, statistical_connection(stat, alpha)).max_abs()
    return r <= tol, r


def hessian_curvature(stat: StatisticalStructure, alpha: float = 1.0, flatness: float = 1e-9) -> np.ndarray:
    """
    H[l, i, j, k] = component l of 1/2 (nabla_{e_i} K)(e_j, e_k), nabla = nabla^(alpha).
    Requires nabla to be flat.
    """
    flat, r_norm = is_hessian(stat, alpha, flatness)
    if not flat:
        raise ValidationError(
            "hessian-flatness",
            f"curvature of the alpha={alpha:g} connection is {r_norm:.3e} (> {flatness:g})",
        )
    conn = statistical_connection(stat, alpha)
    d = covariant_derivative(conn, stat.skewness, upper=1)   # d[i, l, j, k]
    return 0.5 * np.moveaxis(d, 1, 0)


# ---------------------------------------------------------------------------
# Codazzi tensors
# ---------------------------------------------------------------------------

def _symmetric_h(alg: LieAlgebra, h: np.ndarray) -> np.ndarray:
    arr = np.asarray(h, dtype=float)
    if arr.shape != (alg.dim, alg.dim):
        raise InputError(f"h must be {alg.dim}x{alg.dim}, got {arr.shape}")
    if float(np.max(np.abs(arr - arr.T))) > 1e-9:
        raise InputError("h must be symmetric")
    return arr


def codazzi_defect(alg: LieAlgebra, ip: InnerProduct, h: np.ndarray) -> float:
    """max |(nabla^g_X h)(Y, Z) - (nabla^g_Y h)(X, Z)|."""
    arr = _symmetric_h(alg, h)
    d = covariant_derivative(levi_civita(alg, ip), arr)
    return float(np.max(np.abs(d - d.transpose(1, 0, 2))))


def essential_check(alg: LieAlgebra, ip: InnerProduct, h: np.ndarray, tol: float = 1e-9) -> bool:
    """Essential: h is Codazzi, nabla^g h != 0 and no eigenspace of h^sharp is an ideal."""
    arr = _symmetric_h(alg, h)
    d = covariant_derivative(levi_civita(alg, ip), arr)
    defect = float(np.max(np.abs(d - d.transpose(1, 0, 2))))
    if defect > tol:
        logger.debug("h is not Codazzi (defect %.3e); not essential", defect)
        return False
    if float(np.max(np.abs(d))) <= tol:
        logger.debug("h is parallel; not essential")
        return False
    values, vectors = scipy.linalg.eigh(arr, ip.gram)
    groups: list[list[int]] = []
    for idx, value in enumerate(values):
        if groups and abs(value - values[groups[-1][0]]) <= 1e-9 * max(1.0, abs(value)):
            groups[-1].append(idx)
        else:
            groups.append([idx])
    for group in groups:
        ideal, _ = is_subalgebra_ideal(alg, vectors[:, group].T, tol)
        if ideal:
            logger.debug("eigenspace for eigenvalue %g is an ideal", values[group[0]])
            return False
    return True


# ---------------------------------------------------------------------------
# Sasakian statistical structures
# ---------------------------------------------------------------------------

def sasakian_data_check(ip: InnerProduct, sas: SasakianData) -> dict[str, float]:
    """Defects of phi^2 = -Id + eta(x) xi, eta(xi) = 1, g(phi., phi.) = g - eta (x) eta."""
    if ip.dim != 3:
        raise InputError("Sasakian data requires a 3-dimensional metric")
    phi, xi, eta = sas.phi, sas.xi, sas.eta
    return {
        "phi_squared": float(np.max(np.abs(phi @ phi - (-np.eye(3) + np.outer(xi, eta))))),
        "eta_xi": abs(float(eta @ xi) - 1.0),
        "compatible_metric": float(
            np.max(np.abs(phi.T @ ip.gram @ phi - (ip.gram - np.outer(eta, eta))))
        ),
    }


def _require_sasakian(ip: InnerProduct, sas: SasakianData, tol: float = 1e-10) -> None:
    for name, value in sasakian_data_check(ip, sas).items():
        if value > tol:
            raise ValidationError("sasakian-data", f"{name} defect {value:.3e}")


def sasaki_eta_cubic(sas: SasakianData, alpha: float = 1.0) -> CubicForm:
    """alpha * eta (x) eta (x) eta."""
    return CubicForm.from_tensor(alpha * np.einsum("i,j,k->ijk", sas.eta, sas.eta, sas.eta))


def sasakian_statistical_check(
    stat: StatisticalStructure, sas: SasakianData, tol: float = 1e-10,
) -> tuple[bool, float]:
    """K(X) phi Y + phi K(X) Y = 0 over basis pairs."""
    _require_sasakian(stat.ip, sas)
    k = stat.skewness
    anti = np.einsum("lim,mj->lij", k, sas.phi) + np.einsum("lm,mij->lij", sas.phi, k)
    defect = float(np.max(np.abs(anti)))
    return defect <= tol, defect


def sasaki_family_connection(
    alg: LieAlgebra, ip: InnerProduct, sas: SasakianData, r: float,
) -> Connection:
    """nabla^g + A^r,  A^r(X)Y = g(X, phi Y) xi - r eta(X) phi Y + eta(Y) phi X."""
    _require_sasakian(ip, sas)
    if alg.dim != 3:
        raise InputError("the Sasakian connection family is defined on 3-dimensional algebras")
    g_phi = ip.gram @ sas.phi                       # g(e_i, phi e_j)
    a = (
        np.einsum("l,ij->lij", sas.xi, g_phi)
        - r * np.einsum("i,lj->lij", sas.eta, sas.phi)
        + np.einsum("j,li->lij", sas.eta, sas.phi)
    )
    return levi_civita(alg, ip).shifted(a, label=f"sasaki({r:g})")


# ---------------------------------------------------------------------------
# Ambrose-Singer checks
# ---------------------------------------------------------------------------

def ambrose_singer_check(
    alg: LieAlgebra,
    ip: InnerProduct,
    conn_tilde: Connection,
    tensors: Mapping[str, TensorField],
) -> dict[str, float]:
    """Max covariant-derivative defect of each constant-frame tensor under ``conn_tilde``."""
    if conn_tilde.dim != alg.dim or ip.dim != alg.dim:
        raise InputError("algebra, metric and connection dimensions differ")
    defects: dict[str, float] = {}
    for name, (components, upper) in tensors.items():
        d = covariant_derivative(conn_tilde, components, upper=upper)
        defects[name] = float(np.max(np.abs(d))) if d.size else 0.0
        logger.debug("Ambrose-Singer defect %s = %.3e", name, defects[name])
    return defects


def homogeneous_tensors(
    alg: LieAlgebra,
    ip: InnerProduct,
    conn_tilde: Connection,
    stat: StatisticalStructure | None = None,
    sas: SasakianData | None = None,
) -> dict[str, TensorField]:
    """The tensors an Ambrose-Singer connection must parallelize: g, R, S and optionally C, phi, xi, eta."""
    lc = levi_civita(alg, ip)
    tensors: dict[str, TensorField] = {
        "g": (np.asarray(ip.gram), 0),
        "R": (curvature(alg, lc).r, 1),
        "S": (conn_tilde.gamma - lc.gamma, 1),
    }
    if stat is not None:
        tensors["C"] = (stat.cubic.tensor(), 0)
    if sas is not None:
        tensors["phi"] = (sas.phi, 1)
        tensors["xi"] = (sas.xi, 1)
        tensors["eta"] = (sas.eta, 0)
    return tensors


def homogeneous_structure_check(
    stat: StatisticalStructure, conn_tilde: Connection,
) -> tuple[bool, dict[str, float]]:
    """True when conn_tilde parallelizes g, R^g, S and C (a homogeneous statistical structure)."""
    defects = ambrose_singer_check(
        stat.alg, stat.ip, conn_tilde, homogeneous_tensors(stat.alg, stat.ip, conn_tilde, stat=stat)
    )
    return all(v <= 1e-9 for v in defects.values()), defects


def ricci_pair_traces(stat: StatisticalStructure, alpha: float) -> tuple[float, float]:
    """tr_g Ric^(alpha) and tr_g Ric^(-alpha)."""
    inv = stat.ip.inverse()
    plus = ricci(stat.alg, statistical_connection(stat, alpha))
    minus = ricci(stat.alg, statistical_connection(stat, -alpha))
    return float(np.sum(inv * plus)), float(np.sum(inv * minus))
