"""
Hand-transcribed constraint systems for the Milnor and normalized
non-unimodular frames, used to cross-check the generically assembled system.

Unknowns are the canonical cubic components in order
111 112 113 122 123 133 222 223 233 333; in an orthonormal frame
K^l_ij = C_ijl, so each K^l_ij below names the component sorted(i, j, l).
"""

import numpy as np

from liestat.algebra import MilnorFrameSpec

COLUMNS = ["111", "112", "113", "122", "123", "133", "222", "223", "233", "333"]


def _k(upper: int, i: int, j: int) -> int:
    """Column of K^upper_ij (1-based indices)."""
    return COLUMNS.index("".join(sorted(f"{i}{j}{upper}")))


def _rows(equations: list[dict[int, float]]) -> np.ndarray:
    out = np.zeros((len(equations), len(COLUMNS)))
    for r, eq in enumerate(equations):
        for col, coeff in eq.items():
            out[r, col] += coeff
    return out


def unimodular_system(c1: float, c2: float, c3: float) -> np.ndarray:
    """
    Fifteen equations in the Milnor frame, written with the Levi-Civita
    coefficients l1, l2, l3. The third "d" row carries K^3_33 (not K^2_33).
    """
    l1, l2, l3 = MilnorFrameSpec(c1, c2, c3).lambdas
    k = _k
    return _rows([
        {k(1, 2, 3): l1 + l2},
        {k(1, 2, 3): l2 + l3},
        {k(1, 2, 3): l3 + l1},
        {k(1, 3, 1): l1 + 3 * l2},
        {k(2, 1, 2): l2 + 3 * l3},
        {k(3, 2, 3): l3 + 3 * l1},
        {k(1, 1, 2): l1 + 3 * l3},
        {k(2, 2, 3): l2 + 3 * l1},
        {k(3, 3, 1): l3 + 3 * l2},
        {k(2, 2, 2): l1, k(1, 1, 2): l2, k(2, 3, 3): -(2 * l1 + l2)},
        {k(3, 3, 3): l2, k(3, 2, 2): l3, k(3, 1, 1): -(2 * l2 + l3)},
        {k(1, 3, 3): l1, k(1, 1, 1): l3, k(1, 2, 2): -(2 * l3 + l1)},
        {k(3, 3, 3): l1, k(3, 1, 1): l3, k(3, 2, 2): -(2 * l1 + l3)},
        {k(1, 2, 2): l1, k(1, 1, 1): l2, k(1, 3, 3): -(2 * l2 + l1)},
        {k(2, 3, 3): l2, k(2, 2, 2): l3, k(2, 1, 1): -(2 * l3 + l2)},
    ])


def nonunimodular_system(xi: float, eta: float) -> np.ndarray:
    """Fifteen equations in the normalized non-unimodular frame."""
    x, e = xi, eta
    k = _k
    return _rows([
        # K^1_11, K^1_22, K^1_23, K^1_33 block
        {k(1, 1, 1): -(1 + x), k(1, 2, 2): 2 * (1 + x), k(1, 2, 3): 2 * e * (1 + x)},
        {k(1, 1, 1): -(1 - x), k(1, 2, 3): -2 * e * (1 - x), k(1, 3, 3): 2 * (1 - x)},
        {k(1, 1, 1): -x * e, k(1, 2, 2): -e, k(1, 2, 3): 2 * (1 + x), k(1, 3, 3): e * (1 + 2 * x)},
        {k(1, 1, 1): -x * e, k(1, 2, 2): e * (2 * x - 1), k(1, 2, 3): 2 * (1 - x), k(1, 3, 3): e},
        {k(1, 2, 3): 1 + x, k(1, 2, 2): -x * e},
        {k(1, 2, 2): 1 - x, k(1, 3, 3): -(1 + x)},
        {k(1, 2, 3): 1 - x, k(1, 3, 3): -x * e},
        # K^1_12, K^1_13 block
        {k(1, 1, 2): 3 * (1 + x), k(1, 1, 3): e * (1 + 3 * x)},
        {k(1, 1, 2): e * (3 * x - 1), k(1, 1, 3): 3 * (1 - x)},
        # K^1_12, K^1_13, K^2_22, K^2_23, K^2_33, K^3_33 block
        *_second_block(x, e),
    ])


def _second_block(x: float, e: float) -> list[dict[int, float]]:
    k = _k
    cols = [k(1, 1, 2), k(1, 1, 3), k(2, 2, 2), k(2, 2, 3), k(2, 3, 3), k(3, 3, 3)]
    return [dict(zip(cols, row)) for row in second_block_matrix(x, e)]


def second_block_matrix(xi: float, eta: float) -> np.ndarray:
    """Coefficients over (K^1_12, K^1_13, K^2_22, K^2_23, K^2_33, K^3_33)."""
    x, e = xi, eta
    return np.array([
        [-2 * (1 + x), 0.0, 1 + x, e * (3 + x), 0.0, 0.0],
        [0.0, -2 * (1 - x), 0.0, 0.0, -e * (3 - x), 1 - x],
        [-x * e, -(1 + x), -e, 1 + x, e * (2 + x), 0.0],
        [-(1 - x), -x * e, 0.0, e * (x - 2), 1 - x, e],
        [-x * e, 1 + x, x * e, -2 * x, -x * e, 0.0],
        [-(1 - x), x * e, 0.0, x * e, -2 * x, -x * e],
    ])


def second_block_determinant(xi: float, eta: float) -> float:
    x2, e2 = xi * xi, eta * eta
    return (1 - xi) * (1 + xi) * (1 + e2) * (1 - x2 - x2 * e2) * (1 - x2 + 9 * e2 - x2 * e2)


def cubic_vector(**components: float) -> np.ndarray:
    """cubic_vector(C111=1, C133=-1) -> values in canonical order."""
    out = np.zeros(len(COLUMNS))
    for name, value in components.items():
        out[COLUMNS.index(name[1:])] = value
    return out
