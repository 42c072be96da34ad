"""Brute-force ground truth on dense grids.

These routines evaluate the inner maximisation by exhaustive scanning and are
used to check the optimizer and the surface catalog, never by the optimizer
itself. Grids are one-dimensional in v (the benchmark case); ``phi_grid``,
``R_eps_grid`` and ``hausdorff_one_sided`` also accept arbitrary point stacks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .problem import MinimaxProblem, as_vector


@dataclass(frozen=True)
class Grid1D:
    lower: float
    upper: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if self.upper < self.lower:
            raise ValueError("grid upper bound below lower bound")
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("grid bounds must be finite")

    @property
    def size(self) -> int:
        return int(round((self.upper - self.lower) / self.step)) + 1

    @property
    def values(self) -> np.ndarray:
        # linspace pins both endpoints exactly
        return np.linspace(self.lower, self.upper, self.size)

    @property
    def points(self) -> np.ndarray:
        return self.values[:, None]


def _points(grid) -> np.ndarray:
    if isinstance(grid, Grid1D):
        return grid.points
    pts = np.asarray(grid, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def phi_grid(problem: MinimaxProblem, u, vgrid) -> float:
    """max_v f(u, v) over the grid points."""
    return float(problem.values(as_vector(u, "u"), _points(vgrid)).max())


def phi_grid_error_bound(l: float, vgrid: Grid1D) -> float:
    """Worst-case shortfall of the grid maximum for an l-Lipschitz f."""
    return 0.5 * l * vgrid.step


def R_eps_grid(problem: MinimaxProblem, u, vgrid, eps: float = 0.0) -> np.ndarray:
    """Grid points whose value is within ``eps`` of the grid maximum."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    pts = _points(vgrid)
    vals = problem.values(as_vector(u, "u"), pts)
    return pts[vals.max() - vals <= eps]


def _local_max_mask(vals: np.ndarray) -> np.ndarray:
    mask = np.ones(vals.shape, dtype=bool)
    mask[1:] &= vals[1:] >= vals[:-1]
    mask[:-1] &= vals[:-1] >= vals[1:]
    return mask


def local_maxima_grid(problem: MinimaxProblem, u, vgrid) -> np.ndarray:
    """Grid points at least as high as their neighbours (plateaus included)."""
    pts = _points(vgrid)
    if pts.shape[1] != 1:
        raise NotImplementedError("local maxima are only scanned on 1-D v-grids")
    vals = problem.values(as_vector(u, "u"), pts)
    return pts[_local_max_mask(vals)]


def hausdorff_one_sided(from_set, to_set) -> float:
    """max over ``from_set`` of the distance to the nearest member of ``to_set``."""
    X = _points(from_set)
    Y = _points(to_set)
    if len(X) == 0 or len(Y) == 0:
        raise ValueError("both sets must be nonempty")
    if X.shape[1] != Y.shape[1]:
        raise ValueError("sets live in different dimensions")
    dist = np.linalg.norm(X[:, None, :] - Y[None, :, :], axis=-1)
    return float(dist.min(axis=1).max())


def zeta_gap(problem: MinimaxProblem, u, vgrid) -> float:
    """Gap between the global maximum and the best non-global local maximum.

    ``inf`` when every local maximum on the grid is global.
    """
    pts = _points(vgrid)
    vals = problem.values(as_vector(u, "u"), pts)
    top = vals.max()
    local = vals[_local_max_mask(vals) & (vals < top)]
    if local.size == 0:
        return math.inf
    return float(top - local.max())


@dataclass(frozen=True)
class LipschitzEstimates:
    l: float
    r: float
    B: float


def estimate_lipschitz(problem: MinimaxProblem, ugrid, vgrid) -> LipschitzEstimates:
    """Finite-difference lower estimates of the Lipschitz constants in v.

    ``l`` bounds |f(u, v) - f(u, v')| / |v - v'| and ``r`` the same for
    grad_u f, both over adjacent v-grid points; ``B`` is max |u| on the u-grid.
    """
    upts = _points(ugrid)
    vpts = _points(vgrid)
    l = r = 0.0
    if len(vpts) > 1:
        gaps = np.linalg.norm(np.diff(vpts, axis=0), axis=1)
        for u in upts:
            f = problem.values(u, vpts)
            g = problem.grads_u(u, vpts)
            l = max(l, float(np.max(np.abs(np.diff(f)) / gaps)))
            r = max(r, float(np.max(np.linalg.norm(np.diff(g, axis=0), axis=1) / gaps)))
    B = float(np.linalg.norm(upts, axis=1).max())
    return LipschitzEstimates(l, r, B)


def phi_on_grid(problem: MinimaxProblem, ugrid, vgrid) -> np.ndarray:
    """Grid maximum of f(u, .) for every u-grid point."""
    vpts = _points(vgrid)
    return np.array([problem.values(u, vpts).max() for u in _points(ugrid)])


def grid_minimax(problem: MinimaxProblem, ugrid, vgrid) -> tuple[np.ndarray, float]:
    """Fixed-grid minimax baseline: minimise the discrete max over ``vgrid``.

    Returns ``(u_hat, phi_A(u_hat))``; ties go to the first (smallest) u.
    """
    upts = _points(ugrid)
    phis = phi_on_grid(problem, upts, vgrid)
    k = int(np.argmin(phis))
    return upts[k].copy(), float(phis[k])


def subgradient_slack(problem: MinimaxProblem, u0, z, ugrid, vgrid) -> float:
    """min over the u-grid of phi(u) - phi(u0) - <z, u - u0>.

    ``z`` is a xi-subgradient of phi at u0 on the sampled set iff the result
    is >= -xi.
    """
    u0 = as_vector(u0, "u0")
    z = as_vector(z, "z")
    upts = _points(ugrid)
    phis = phi_on_grid(problem, upts, vgrid)
    phi0 = phi_grid(problem, u0, vgrid)
    return float(np.min(phis - phi0 - (upts - u0) @ z))
