"""Minimum-norm points and random elements of small convex hulls."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class HullPoint:
    point: np.ndarray
    coefficients: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.point))


def _as_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2 and vectors.dtype == float:
        if len(vectors) == 0:
            raise ValueError("need at least one vector")
        return vectors
    if len(vectors) == 0:
        raise ValueError("need at least one vector")
    Z = np.array([np.atleast_1d(np.asarray(z, dtype=float)) for z in vectors])
    if Z.ndim != 2:
        raise ValueError("vectors must share one dimension")
    return Z


def _affine_minimizer(Z: np.ndarray) -> np.ndarray:
    """Coefficients (summing to one) of the min-norm point of the affine hull of the rows of Z."""
    m = Z.shape[0]
    if m == 1:
        return np.ones(1)
    # Minimise ||Z^T a|| with sum(a) = 1 through the KKT system; lstsq copes with
    # nearly dependent rows.
    G = Z @ Z.T
    kkt = np.zeros((m + 1, m + 1))
    kkt[:m, :m] = G
    kkt[:m, m] = 1.0
    kkt[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    a = sol[:m]
    return a / a.sum()


def min_norm_point(vectors, tol: float = DEFAULT_TOL, max_iter: int = 1000) -> HullPoint:
    """Point of ``co{vectors}`` closest to the origin (Wolfe's method).

    Terminates once ``<x, z_j - x> >= -tol`` holds for every input ``z_j``,
    which certifies ``x`` as the minimum-norm hull point up to ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    Z = _as_matrix(vectors)
    n = Z.shape[0]

    sq = np.einsum("ij,ij->i", Z, Z)
    # stop threshold scaled to the data so tiny inputs still converge
    stop = min(tol, 1e-13 * float(sq.max()))
    start = int(np.argmin(sq))
    active = [start]
    lam = np.ones(1)
    x = Z[start].copy()

    for _ in range(max_iter):
        gaps = Z @ x - x @ x
        j = int(np.argmin(gaps))
        if gaps[j] >= -stop or j in active:
            break
        active.append(j)
        lam = np.append(lam, 0.0)

        while True:
            a = _affine_minimizer(Z[active])
            if np.all(a > 0):
                lam = a
                break
            # step from lam towards a until the first coefficient hits zero
            neg = a <= 0
            theta = np.min(lam[neg] / (lam[neg] - a[neg]))
            lam = theta * a + (1.0 - theta) * lam
            lam[neg & (lam <= 1e-15)] = 0.0
            keep = lam > 0
            if not np.any(keep):
                keep[np.argmax(lam)] = True
            active = [k for k, flag in zip(active, keep) if flag]
            lam = lam[keep]
            lam = lam / lam.sum()
        x = lam @ Z[active]

    coef = np.zeros(n)
    coef[active] = lam
    coef = np.clip(coef, 0.0, None)
    coef /= coef.sum()
    return HullPoint(point=coef @ Z, coefficients=coef)


def contains_origin(vectors, tol: float = DEFAULT_TOL) -> bool:
    """True iff the minimum-norm point of the hull has norm at most ``tol``."""
    return min_norm_point(vectors, tol=tol).norm <= tol


def sample_convex_combination(vectors, rng: np.random.Generator) -> np.ndarray:
    """Random hull element with flat-Dirichlet (uniform simplex) weights."""
    return sample_hull_point(vectors, rng).point


def sample_hull_point(vectors, rng: np.random.Generator) -> HullPoint:
    Z = _as_matrix(vectors)
    if Z.shape[0] == 1:
        return HullPoint(point=Z[0].copy(), coefficients=np.ones(1))
    if not np.any(Z != Z[0]):
        # degenerate hull: a single point, no draw needed
        coef = np.zeros(Z.shape[0])
        coef[0] = 1.0
        return HullPoint(point=Z[0].copy(), coefficients=coef)
    a = np.asarray(rng.dirichlet(np.ones(Z.shape[0])), dtype=float)
    return HullPoint(point=a @ Z, coefficients=a)
