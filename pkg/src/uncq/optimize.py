"""Deterministic maximisation of ``|n.T.n|`` over the unit sphere.

A full ``(theta, phi)`` grid picks the starting point, then a compass search
in the tangent plane polishes it. Both stages run in the kernel backend.
An optional exclusion cap removes every direction within ``eps`` radians of
``+-exclude`` from the search space.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import EmptySearchSpace
from .measure import BlochDirection

DEFAULT_GRID = (121, 240)
TIE_TOL = 1e-12
REFINE_TOL = 1e-13
STEP_MIN = 1e-7
MAX_ITER = 100_000


class SphereOptimum(NamedTuple):
    direction: BlochDirection
    score: float
    iterations: int


def sphere_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    """``n_theta`` polar angles spanning ``[0, pi]`` inclusive and ``n_phi``
    azimuths spanning ``[0, 2 pi)``."""
    if n_theta < 2 or n_phi < 1:
        raise ValueError(f"grid must be at least 2x1, got {n_theta}x{n_phi}")
    thetas = np.pi * np.arange(n_theta) / (n_theta - 1)
    phis = 2.0 * np.pi * np.arange(n_phi) / n_phi
    return thetas, phis


def maximize_quadratic(t, exclude: BlochDirection | None = None, eps: float = 0.0,
                       grid: tuple[int, int] = DEFAULT_GRID) -> SphereOptimum:
    """Direction maximising ``|n.t.n|`` outside the cap around ``+-exclude``.

    Ties on the grid go to the smallest theta, then the smallest phi. The
    polish stage only moves on strict improvements, so a flat objective
    returns the tie-broken grid point unchanged.
    """
    if eps < 0.0:
        raise ValueError(f"eps must be non-negative, got {eps}")
    if exclude is not None and eps >= math.pi / 2:
        raise EmptySearchSpace(f"exclusion radius {eps} >= pi/2 leaves no directions")
    t = np.ascontiguousarray(0.5 * (np.asarray(t, dtype=float) + np.asarray(t, dtype=float).T))
    excl = None if exclude is None or eps == 0.0 else np.ascontiguousarray(exclude.vector)
    thetas, phis = sphere_grid(*grid)
    i, j, _ = _backend.scan_grid(t, thetas, phis, excl, eps, TIE_TOL)
    if i < 0:
        # grid too coarse to land outside a wide cap; start on the cap rim
        e = exclude.vector
        k = int(np.argmin(np.abs(e)))
        w = np.zeros(3)
        w[k] = 1.0
        w -= (w @ e) * e
        w /= np.linalg.norm(w)
        ang = eps * (1.0 + 1e-12) + 1e-15
        n0 = math.cos(ang) * e + math.sin(ang) * w
    else:
        st = math.sin(thetas[i])
        n0 = np.array([st * math.cos(phis[j]), st * math.sin(phis[j]), math.cos(thetas[i])])
    h0 = math.pi / (grid[0] - 1)
    n, score, its = _backend.refine(t, n0, excl, eps, h0, STEP_MIN, REFINE_TOL, MAX_ITER)
    return SphereOptimum(BlochDirection.from_vector(n), float(score), int(its))
