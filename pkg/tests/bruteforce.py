"""Independent reference computations used only by the tests."""

import itertools

import numpy as np


def simplex_grid(n, step, center=None, radius=None):
    """Points of the probability simplex in R^n on a lattice of spacing ``step``.

    With ``center``/``radius`` only the first n-1 coordinates inside the window
    are enumerated (zoomed search).
    """
    if n == 1:
        return np.ones((1, 1))
    axes = []
    for j in range(n - 1):
        if center is None:
            axes.append(np.arange(0.0, 1.0 + step / 2, step))
        else:
            lo = max(0.0, center[j] - radius)
            hi = min(1.0, center[j] + radius)
            axes.append(np.arange(lo, hi + step / 2, step))
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
    last = 1.0 - mesh.sum(axis=1)
    keep = last >= -1e-15
    return np.column_stack([mesh[keep], np.clip(last[keep], 0.0, None)])


def grid_min_norm(Z, coarse=0.02, tiny=1e-10, shrink=2.0, width=3, max_moves=500):
    """Minimum of ||a @ Z|| over simplex lattices.

    A full lattice of spacing ``coarse`` seeds the search; after that each
    level keeps re-centring a small lattice window on the best point until it
    stops moving, then halves the spacing.
    """
    Z = np.asarray(Z, dtype=float)
    n = Z.shape[0]
    A = simplex_grid(n, coarse)
    norms = np.linalg.norm(A @ Z, axis=1)
    best = A[np.argmin(norms)]
    best_norm = norms.min()
    step = coarse
    while step > tiny and n > 1:
        for _ in range(max_moves):
            A = simplex_grid(n, step, center=best, radius=width * step)
            norms = np.linalg.norm(A @ Z, axis=1)
            k = np.argmin(norms)
            if not norms[k] < best_norm:
                break
            best_norm, best = norms[k], A[k]
        step /= shrink
    return float(best_norm)


def face_min_norm(Z):
    """Exact minimum-norm hull point by enumerating every face's affine minimiser."""
    Z = np.asarray(Z, dtype=float)
    n = Z.shape[0]
    best = np.inf
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            A = Z[list(S)]
            m = len(S)
            K = np.zeros((m + 1, m + 1))
            K[:m, :m] = A @ A.T
            K[:m, m] = 1.0
            K[m, :m] = 1.0
            rhs = np.zeros(m + 1)
            rhs[m] = 1.0
            a = np.linalg.lstsq(K, rhs, rcond=None)[0][:m]
            if np.all(a >= -1e-12):
                best = min(best, float(np.linalg.norm(a @ A)))
    return best


def alt_gd(problem, u0, v0, rho, eta, n_iter):
    """Alternating projected gradient descent/ascent written out directly."""
    u = np.array(u0, dtype=float)
    v = np.array(v0, dtype=float)
    us, vs = [], []
    for i in range(1, n_iter + 1):
        u = np.clip(u - rho(i) * problem.grad_u(u, v), problem.domain_u.lower, problem.domain_u.upper)
        v = np.clip(v + eta(i) * problem.grad_v(u, v), problem.domain_v.lower, problem.domain_v.upper)
        us.append(u)
        vs.append(v)
    return np.array(us), np.array(vs)


def harmonic_product(n_iter, c):
    """prod_{i<=n} (1 - c / i): the contraction of u' = u - (c/i) u."""
    return float(np.prod(1.0 - c / np.arange(1, n_iter + 1)))
