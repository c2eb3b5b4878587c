"""
Shared fixtures: repo root on sys.path, seeded random structures, and the
preset catalogue used across the test modules.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

_REPO_ROOT = Path(__file__).resolve().parent.parent
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from liestat.algebra import LieAlgebra, change_frame, preset
from liestat.cubic import CubicForm, component_count
from liestat.geometry import InnerProduct
from liestat.statistical import StatisticalStructure

REPO_ROOT = _REPO_ROOT

# (name, params) pairs covering every preset family
PRESET_CASES = [
    ("r3", []),
    ("milnor", [1.0, 3.0, 1.0]),
    ("milnor", [2.0, 2.0, 2.0]),
    ("milnor", [1.0, -1.0, -1.0]),
    ("milnor", [1.0, 1.0, 0.0]),
    ("milnor", [1.0, 0.0, 0.0]),
    ("nonuni", [0.0, 0.7]),
    ("nonuni", [0.5, 0.3]),
    ("nonuni", [1.0, 0.0]),
    ("g2d", [np.sqrt(2.0)]),
    ("product_g2d_r", [0.5]),
    ("sasaki_g", [1.0]),
    ("sasaki_g", [-5.0]),
]


def random_frame_change(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.eye(n) + 0.2 * rng.standard_normal((n, n))


def random_gram(rng: np.random.Generator, n: int) -> np.ndarray:
    b = rng.standard_normal((n, n))
    return np.eye(n) + 0.3 * (b @ b.T) / n


def random_cubic(rng: np.random.Generator, n: int) -> CubicForm:
    return CubicForm(n, rng.uniform(-1.0, 1.0, component_count(n)))


def random_algebra(rng: np.random.Generator) -> LieAlgebra:
    """A 3D preset with random parameters, expressed in a random frame."""
    if rng.random() < 0.5:
        base = preset("milnor", rng.uniform(-1.5, 1.5, 3))
    else:
        base = preset("nonuni", rng.uniform(0.0, 1.5, 2))
    return change_frame(base, random_frame_change(rng, 3))


def random_structure(rng: np.random.Generator) -> StatisticalStructure:
    alg = random_algebra(rng)
    return StatisticalStructure(alg, InnerProduct(random_gram(rng, 3)), random_cubic(rng, 3))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def repo_root() -> Path:
    return REPO_ROOT


@pytest.fixture
def orthonormal3() -> InnerProduct:
    return InnerProduct.orthonormal(3)
