"""Minimax problem container, box domains and gradient checks."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np


def as_vector(x, name: str = "x") -> np.ndarray:
    """Return ``x`` as a finite 1-D float array."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries: {arr}")
    return arr


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box ``lower <= x <= upper``; ``±inf`` marks a free coordinate."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError(f"bound shapes differ: {lo.shape} vs {hi.shape}")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise ValueError("bounds must not be NaN")
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, lo: float, hi: float, dim: int = 1) -> "BoxDomain":
        return cls(np.full(dim, lo, dtype=float), np.full(dim, hi, dtype=float))

    @classmethod
    def unbounded(cls, dim: int = 1) -> "BoxDomain":
        return cls.cube(-np.inf, np.inf, dim)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    def contains(self, x, atol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol))


def project(x, box: BoxDomain) -> np.ndarray:
    """Clamp ``x`` coordinate-wise onto ``box``.

    ``x`` may also be a stack of points with shape ``(n, dim)``; each row is
    projected independently.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (box.dim,):
        raise ValueError(f"dimension mismatch: point {x.shape} vs box of dim {box.dim}")
    return np.minimum(np.maximum(x, box.lower), box.upper)


def sample_uniform(box: BoxDomain, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Draw i.i.d. uniform coordinates inside a bounded box.

    With ``size`` given, returns ``size`` points stacked as rows.
    """
    if not box.is_bounded:
        raise ValueError("cannot sample uniformly from a box with infinite bounds")
    shape = (box.dim,) if size is None else (size, box.dim)
    width = box.upper - box.lower
    # zero-width coordinates return the bound exactly
    return box.lower + width * rng.random(shape)


@dataclass(frozen=True)
class MinimaxProblem:
    """``min_u max_v f(u, v)`` over ``domain_u x domain_v``.

    ``f``, ``grad_u`` and ``grad_v`` take 1-D arrays ``u`` and ``v``. When
    ``vectorized`` is true they must also accept a stack of v's with shape
    ``(K, dim_v)`` and return one value (or gradient row) per stacked v; the
    optimizer then evaluates a whole beam in one call.
    """

    f: Callable[[np.ndarray, np.ndarray], float]
    grad_u: Callable[[np.ndarray, np.ndarray], np.ndarray]
    grad_v: Callable[[np.ndarray, np.ndarray], np.ndarray]
    domain_u: BoxDomain
    domain_v: BoxDomain
    vectorized: bool = False
    name: str = field(default="", compare=False)

    @property
    def dim_u(self) -> int:
        return self.domain_u.dim

    @property
    def dim_v(self) -> int:
        return self.domain_v.dim

    def value(self, u, v) -> float:
        return float(self.f(u, v))

    def values(self, u, vs) -> np.ndarray:
        """f(u, v) for every row of ``vs``."""
        if self.vectorized:
            return np.asarray(self.f(u, vs), dtype=float).reshape(len(vs))
        return np.array([self.f(u, v) for v in vs], dtype=float)

    def grads_u(self, u, vs) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.grad_u(u, vs), dtype=float).reshape(len(vs), self.dim_u)
        return np.array([self.grad_u(u, v) for v in vs], dtype=float).reshape(len(vs), self.dim_u)

    def grads_v(self, u, vs) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.grad_v(u, vs), dtype=float).reshape(len(vs), self.dim_v)
        return np.array([self.grad_v(u, v) for v in vs], dtype=float).reshape(len(vs), self.dim_v)


@dataclass
class GradientReport:
    max_error: float
    errors: list = field(default_factory=list)
    skipped: list = field(default_factory=list)


def _central_difference(fun, x: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(x)
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = h
        out[j] = (fun(x + step) - fun(x - step)) / (2.0 * h)
    return out


def validate_gradients(
    problem: MinimaxProblem,
    points: Iterable[tuple[Sequence[float], Sequence[float]]],
    h: float = 1e-5,
) -> GradientReport:
    """Compare the analytic gradients against central finite differences.

    The error per coordinate is ``|analytic - numeric| / max(1, |analytic|)``.
    Points closer than ``h`` to a finite bound are skipped with a warning.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    report = GradientReport(max_error=0.0)
    for u, v in points:
        u = as_vector(u, "u")
        v = as_vector(v, "v")
        near_u = np.any(u - h < problem.domain_u.lower) or np.any(u + h > problem.domain_u.upper)
        near_v = np.any(v - h < problem.domain_v.lower) or np.any(v + h > problem.domain_v.upper)
        if near_u or near_v:
            warnings.warn(f"skipping ({u}, {v}): within h={h} of the domain boundary")
            report.skipped.append((u, v))
            continue
        gu = np.asarray(problem.grad_u(u, v), dtype=float).reshape(u.shape)
        gv = np.asarray(problem.grad_v(u, v), dtype=float).reshape(v.shape)
        nu = _central_difference(lambda x: problem.value(x, v), u, h)
        nv = _central_difference(lambda y: problem.value(u, y), v, h)
        err_u = np.abs(gu - nu) / np.maximum(1.0, np.abs(gu))
        err_v = np.abs(gv - nv) / np.maximum(1.0, np.abs(gv))
        err = float(max(err_u.max(), err_v.max()))
        report.errors.append(err)
        report.max_error = max(report.max_error, err)
    return report
