"""Exact one-step Skorokhod reflection in the quadrant.

For ``R = [[1, r2], [r1, 1]]`` with ``1 - r1 r2 > 0`` the one-step problem
``z' = w + R dL >= 0, dL >= 0, dL_i z'_i = 0`` is a linear complementarity
problem with a P-matrix, so exactly one of four sign patterns solves it.
"""

import numpy as np

from quadmartin.shared.exceptions import SimulationError


def reflection_matrix(r1: float, r2: float) -> np.ndarray:
    """``R`` whose columns are the reflection directions of the two faces."""
    return np.array([[1.0, r2], [r1, 1.0]])


def reflect(w: np.ndarray, r1: float, r2: float) -> tuple[np.ndarray, np.ndarray]:
    """Project unconstrained positions ``w`` of shape ``(n, 2)`` back into the quadrant.

    Returns the reflected positions and the local time increments ``dL``.

    Raises:
        SimulationError: If no sign pattern is feasible (only when ``r1 r2 >= 1``)
    """
    det = 1.0 - r1 * r2
    if det <= 0:
        raise SimulationError(f"reflection matrix is singular or not a P-matrix (det={det})")
    w = np.atleast_2d(np.asarray(w, dtype=float))
    w1, w2 = w[:, 0], w[:, 1]
    z = np.empty_like(w)
    dL = np.zeros_like(w)

    free = (w1 >= 0) & (w2 >= 0)
    # push on the vertical face only
    lift2 = w2 - r1 * w1
    face1 = ~free & (w1 < 0) & (lift2 >= 0)
    # push on the horizontal face only
    lift1 = w1 - r2 * w2
    face2 = ~free & ~face1 & (w2 < 0) & (lift1 >= 0)
    # both faces, corner
    l1 = (r2 * w2 - w1) / det
    l2 = (r1 * w1 - w2) / det
    corner = ~(free | face1 | face2) & (l1 >= 0) & (l2 >= 0)

    infeasible = ~(free | face1 | face2 | corner)
    if infeasible.any():
        raise SimulationError(f"{int(infeasible.sum())} reflection step(s) have no solution")

    z[free] = w[free]

    z[face1, 0] = 0.0
    z[face1, 1] = lift2[face1]
    dL[face1, 0] = -w1[face1]

    z[face2, 0] = lift1[face2]
    z[face2, 1] = 0.0
    dL[face2, 1] = -w2[face2]

    z[corner] = 0.0
    dL[corner, 0] = l1[corner]
    dL[corner, 1] = l2[corner]
    return z, dL


def step_reflect(
    z: tuple[float, float], delta: tuple[float, float], r1: float, r2: float
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Single reflected step from ``z`` with free increment ``delta``."""
    if z[0] < 0 or z[1] < 0:
        raise SimulationError(f"step must start in the quadrant, got {z}")
    w = np.array([[z[0] + delta[0], z[1] + delta[1]]])
    z_new, dL = reflect(w, r1, r2)
    return (float(z_new[0, 0]), float(z_new[0, 1])), (float(dL[0, 0]), float(dL[0, 1]))
