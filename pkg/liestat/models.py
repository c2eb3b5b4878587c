"""
Normal and Student-t families as statistical Lie groups
=======================================================
Both families live on the upper half plane {(x, y) : y > 0} with a metric

    g = (nu1^2 dx^2 + nu2^2 dy^2) / y^2

which is left-invariant on the 2D solvable group; the orthonormal frame
e1 = (y/nu1) d/dx, e2 = (y/nu2) d/dy satisfies [e1, e2] = -(1/nu2) e1, i.e.
preset g2d(nu2). The Fisher cubic in that frame has only C112 and C222 = 2 C112.

    normal:  nu1 = 1,                  nu2 = sqrt(2),               C112 = sqrt(2)
    t(nu):   nu1 = sqrt((nu+1)/(nu+3)), nu2 = sqrt(2 nu/(nu+3)),   C112 = t_frame_skewness(nu)

The t cubic is built from the frame table; the coordinate form is derived from
it (t_coordinate_skewness) by pushing the frame table forward.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from liestat.algebra import LieAlgebra, preset
from liestat.cubic import CubicForm
from liestat.errors import InputError
from liestat.geometry import InnerProduct
from liestat.statistical import StatisticalStructure

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class NormalModel:
    """Univariate normal family, x = mu, y = sigma."""
    name: str = "normal"

    @property
    def nu1(self) -> float:
        return 1.0

    @property
    def nu2(self) -> float:
        return SQRT2

    @property
    def skewness_scale(self) -> float:
        return SQRT2

    def algebra(self) -> LieAlgebra:
        return preset("g2d", [self.nu2])


@dataclass(frozen=True)
class TModel:
    """
    Student-t family with nu degrees of freedom, x = location, y = scale.

    nu is any positive real; the geometry is smooth in nu even where the
    density has no integer interpretation.
    """
    nu: float
    name: str = "t"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise InputError(f"t model requires nu > 0, got {self.nu}")

    @property
    def nu1(self) -> float:
        return math.sqrt((self.nu + 1.0) / (self.nu + 3.0))

    @property
    def nu2(self) -> float:
        return math.sqrt(2.0 * self.nu / (self.nu + 3.0))

    @property
    def skewness_scale(self) -> float:
        return t_frame_skewness(self.nu)

    def algebra(self) -> LieAlgebra:
        return preset("g2d", [self.nu2])


Model = Union[NormalModel, TModel]


def _model_structure(model: Model) -> StatisticalStructure:
    a = model.skewness_scale
    cubic = CubicForm.from_components(2, {(0, 0, 1): a, (1, 1, 1): 2.0 * a})
    return StatisticalStructure(model.algebra(), InnerProduct.orthonormal(2), cubic)


def normal_structure() -> StatisticalStructure:
    """g2d(sqrt 2), orthonormal, K(e1)e1 = sqrt2 e2, K(e1)e2 = sqrt2 e1, K(e2)e2 = 2 sqrt2 e2."""
    return _model_structure(NormalModel())


def t_frame_skewness(nu: float) -> float:
    """C112 of the t family: sqrt(2(nu+3)) (nu-1) / (sqrt(nu) (nu+5))."""
    if not (math.isfinite(nu) and nu > 0):
        raise InputError(f"t model requires nu > 0, got {nu}")
    return math.sqrt(2.0 * (nu + 3.0)) * (nu - 1.0) / (math.sqrt(nu) * (nu + 5.0))


def t_structure(nu: float) -> StatisticalStructure:
    return _model_structure(TModel(nu))


def t_curvature_constant(nu: float, alpha: float) -> float:
    """k with R^(alpha) = k (g(Y,Z)X - g(Z,X)Y) on the t family."""
    if not (math.isfinite(nu) and nu > 0):
        raise InputError(f"t model requires nu > 0, got {nu}")
    s = alpha * (nu - 1.0) / (nu + 5.0)
    return (nu + 3.0) / (2.0 * nu) * (s + 1.0) * (s - 1.0)


def flat_alpha(nu: float) -> float:
    """The alpha at which the t-family alpha-connection is flat."""
    if nu == 1:
        raise InputError("flat_alpha is undefined at nu = 1 (every alpha-connection coincides)")
    if not (math.isfinite(nu) and nu > 0):
        raise InputError(f"t model requires nu > 0, got {nu}")
    return (nu + 5.0) / (nu - 1.0)


def q_to_nu(q: float) -> float:
    """q-normal index to t degrees of freedom, nu = (3 - q)/(q - 1)."""
    if not (1.0 < q < 3.0):
        raise InputError(f"q must satisfy 1 < q < 3, got {q}")
    return (3.0 - q) / (q - 1.0)


def _check_point(point: tuple[float, float]) -> tuple[float, float]:
    if len(point) != 2:
        raise InputError(f"a point on the half plane has two coordinates, got {point!r}")
    x, y = float(point[0]), float(point[1])
    if not y > 0:
        raise InputError(f"half-plane point needs y > 0, got y = {y}")
    return x, y


def coordinate_metric(model: Model, point: tuple[float, float]) -> np.ndarray:
    """Gram matrix of (d/dx, d/dy) at ``point``."""
    _, y = _check_point(point)
    return np.diag([model.nu1 ** 2, model.nu2 ** 2]) / (y * y)


def frame_to_coordinates(model: Model, point: tuple[float, float]) -> np.ndarray:
    """Column a holds e_a in the coordinate basis: e1 = (y/nu1) d/dx, e2 = (y/nu2) d/dy."""
    _, y = _check_point(point)
    return np.diag([y / model.nu1, y / model.nu2])


def t_coordinate_skewness(nu: float, point: tuple[float, float]) -> np.ndarray:
    """
    kc[m, a, b] = component m (in d/dx, d/dy) of K(d_a) d_b at ``point``,
    pushed forward from the frame table.
    """
    model = TModel(nu)
    return _coordinate_skewness(model, _model_structure(model).skewness, point)


def normal_coordinate_skewness(point: tuple[float, float]) -> np.ndarray:
    model = NormalModel()
    return _coordinate_skewness(model, _model_structure(model).skewness, point)


def _coordinate_skewness(model: Model, k: np.ndarray, point: tuple[float, float]) -> np.ndarray:
    p = frame_to_coordinates(model, point)
    q = np.linalg.inv(p)
    return np.einsum("ml,lij,ia,jb->mab", p, k, q, q)
