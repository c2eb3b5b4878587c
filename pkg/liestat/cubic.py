"""
Cubic forms and skewness operators
==================================
A cubic form C is totally symmetric, so only the components C_{abc} with
a <= b <= c are stored (dim(dim+1)(dim+2)/6 of them), in lexicographic order:

    dim 2: 111 112 122 222
    dim 3: 111 112 113 122 123 133 222 223 233 333

The skewness operator is its metric dual, g(K(X)Y, Z) = C(X, Y, Z), stored
as ``k[l, i, j]`` = component l of K(e_i) e_j.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from liestat.errors import InputError, ValidationError
from liestat.geometry import InnerProduct

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def component_indices(dim: int) -> tuple[tuple[int, int, int], ...]:
    """Canonical multisets (a <= b <= c), 0-based."""
    return tuple(itertools.combinations_with_replacement(range(dim), 3))


def component_count(dim: int) -> int:
    return dim * (dim + 1) * (dim + 2) // 6


def component_label(index: tuple[int, int, int]) -> str:
    """1-based label such as "112"."""
    return "".join(str(i + 1) for i in index)


@dataclass(frozen=True, eq=False)
class CubicForm:
    """Fully symmetric trilinear form stored by canonical components."""
    dim: int
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.shape != (component_count(self.dim),):
            raise InputError(
                f"cubic form on dim {self.dim} needs {component_count(self.dim)} components, got {v.size}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, dim: int) -> "CubicForm":
        return cls(dim, np.zeros(component_count(dim)))

    @classmethod
    def from_components(cls, dim: int, entries: dict[tuple[int, int, int], float]) -> "CubicForm":
        """Build from a mapping of 0-based index triples (any order) to values."""
        values = np.zeros(component_count(dim))
        lookup = {idx: n for n, idx in enumerate(component_indices(dim))}
        for idx, value in entries.items():
            key = tuple(sorted(idx))
            if key not in lookup:
                raise InputError(f"cubic index {component_label(key)} out of range for dim {dim}")
            values[lookup[key]] = float(value)
        return cls(dim, values)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray, tol: float = 1e-9) -> "CubicForm":
        """Read canonical components of a full C[i, j, k] after checking total symmetry."""
        t = np.asarray(tensor, dtype=float)
        dim = t.shape[0]
        defect = max(
            float(np.max(np.abs(t - np.transpose(t, perm))))
            for perm in itertools.permutations(range(3))
        )
        if defect > tol:
            raise ValidationError("cubic-symmetry", f"C is not totally symmetric (defect {defect:.3e})")
        return cls(dim, np.array([t[idx] for idx in component_indices(dim)]))

    def tensor(self) -> np.ndarray:
        """Full symmetric array C[i, j, k]."""
        t = np.zeros((self.dim,) * 3)
        for value, idx in zip(self.values, component_indices(self.dim)):
            for perm in set(itertools.permutations(idx)):
                t[perm] = value
        return t

    def items(self) -> Iterable[tuple[tuple[int, int, int], float]]:
        """Nonzero canonical components."""
        for idx, value in zip(component_indices(self.dim), self.values):
            if value != 0.0:
                yield idx, float(value)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def __mul__(self, scale: float) -> "CubicForm":
        return CubicForm(self.dim, self.values * float(scale))

    __rmul__ = __mul__

    def __add__(self, other: "CubicForm") -> "CubicForm":
        return CubicForm(self.dim, self.values + other.values)

    def __repr__(self) -> str:
        parts = ", ".join(f"C{component_label(i)}={v:g}" for i, v in self.items())
        return f"CubicForm(dim={self.dim}, {parts or '0'})"


def unit_cubics(dim: int) -> list[CubicForm]:
    """One cubic per canonical component, value 1 on every permutation of its index."""
    eye = np.eye(component_count(dim))
    return [CubicForm(dim, row) for row in eye]


def skewness_from_cubic(ip: InnerProduct, cubic: CubicForm) -> np.ndarray:
    """K[l, i, j] with g(K(e_i) e_j, e_k) = C_{ijk}."""
    if ip.dim != cubic.dim:
        raise InputError(f"cubic form has dim {cubic.dim} but metric has dim {ip.dim}")
    return np.moveaxis(ip.raise_last(cubic.tensor()), -1, 0)


def cubic_from_skewness(ip: InnerProduct, k: np.ndarray, tol: float = 1e-9) -> CubicForm:
    """Lower K to C_{ijk} = g(K(e_i) e_j, e_k); rejects a K whose lowering is not symmetric."""
    arr = np.asarray(k, dtype=float)
    if arr.shape != (ip.dim,) * 3:
        raise InputError(f"skewness must have shape {(ip.dim,) * 3}, got {arr.shape}")
    lowered = np.einsum("lij,lk->ijk", arr, ip.gram)
    return CubicForm.from_tensor(lowered, tol=tol)


def skewness_defects(ip: InnerProduct, k: np.ndarray) -> dict[str, float]:
    """Symmetry K(X)Y = K(Y)X and self-adjointness of each K(e_i)."""
    lowered = np.einsum("lij,lk->ijk", k, ip.gram)
    return {
        "symmetric": float(np.max(np.abs(k - k.transpose(0, 2, 1)))),
        "self_adjoint": float(np.max(np.abs(lowered - lowered.transpose(0, 2, 1)))),
    }


def cubic_from_entries(dim: int, entries: Sequence[Sequence[float]]) -> CubicForm:
    """
    Build a cubic from 1-based ``[i, j, k, value]`` rows, symmetrizing each entry.
    Two rows naming the same multiset must agree.
    """
    seen: dict[tuple[int, int, int], float] = {}
    for n, row in enumerate(entries):
        if len(row) != 4:
            raise InputError(f"cubic[{n}]: expected [i, j, k, value], got {list(row)}")
        idx = []
        for name, raw in zip("ijk", row[:3]):
            if int(raw) != raw or not 1 <= int(raw) <= dim:
                raise InputError(f"cubic[{n}]: index {name}={raw} out of range 1..{dim}")
            idx.append(int(raw) - 1)
        key = tuple(sorted(idx))
        value = float(row[3])
        if key in seen and seen[key] != value:
            raise InputError(
                f"cubic[{n}]: component {component_label(key)} already set to {seen[key]:g}"
            )
        seen[key] = value
    return CubicForm.from_components(dim, seen)
