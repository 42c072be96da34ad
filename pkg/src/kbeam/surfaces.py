"""Analytic two-player test surfaces with known minimax solutions.

Every surface is one-dimensional in both players and, apart from the
unconstrained quadratic, lives on ``[-0.5, 0.5]^2``. The callables broadcast
over a stack of v's of shape ``(K, 1)`` so a whole beam is evaluated at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .problem import BoxDomain, MinimaxProblem, as_vector

SQUARE = BoxDomain.cube(-0.5, 0.5)


@dataclass(frozen=True)
class SolutionSet:
    """Minimax u-components: isolated points and/or closed intervals (1-D)."""

    points: tuple = ()
    intervals: tuple = ()

    def __post_init__(self):
        if not self.points and not self.intervals:
            raise ValueError("solution set is empty")


def distance_to_solution(u, solutions: SolutionSet) -> float:
    """Euclidean distance from ``u`` to the closest member of ``solutions``."""
    if not solutions.points and not solutions.intervals:
        raise ValueError("solution set is empty")
    u = as_vector(u, "u")
    best = np.inf
    for p in solutions.points:
        p = as_vector(p, "solution point")
        if p.shape != u.shape:
            raise ValueError(f"dimension mismatch: {u.shape} vs {p.shape}")
        best = min(best, float(np.linalg.norm(u - p)))
    for lo, hi in solutions.intervals:
        if u.shape != (1,):
            raise ValueError("interval solution sets are one-dimensional")
        best = min(best, float(max(lo - u[0], 0.0, u[0] - hi)))
    return best


@dataclass(frozen=True)
class BenchmarkSurface:
    name: str
    problem: MinimaxProblem
    minimax_u_set: SolutionSet
    minimax_points: tuple = ()
    saddle_points: tuple = ()
    critical_points: tuple = ((0.0, 0.0),)
    phi_closed_form: Optional[Callable[[float], float]] = None
    R_closed_form: Optional[Callable[[float], tuple]] = None
    # box used for random initial u and beams; the domain itself if bounded
    init_u: BoxDomain = SQUARE
    init_v: BoxDomain = SQUARE
    formula: str = field(default="", compare=False)


def _col(x):
    return x[..., None]


# (a) saddle
def _saddle_f(u, v):
    return u[0] ** 2 - v[..., 0] ** 2


def _saddle_gu(u, v):
    return _col(2.0 * u[0] + 0.0 * v[..., 0])


def _saddle_gv(u, v):
    return _col(-2.0 * v[..., 0])


# (b) rotated saddle
def _rot_f(u, v):
    return u[0] ** 2 - v[..., 0] ** 2 + 2.0 * u[0] * v[..., 0]


def _rot_gu(u, v):
    return _col(2.0 * u[0] + 2.0 * v[..., 0])


def _rot_gv(u, v):
    return _col(-2.0 * v[..., 0] + 2.0 * u[0])


# (c) seesaw
def _seesaw_f(u, v):
    return -v[..., 0] * np.sin(np.pi * u[0])


def _seesaw_gu(u, v):
    return _col(-np.pi * v[..., 0] * np.cos(np.pi * u[0]))


def _seesaw_gv(u, v):
    return _col(-np.sin(np.pi * u[0]) + 0.0 * v[..., 0])


# (d) monkey saddle
def _monkey_f(u, v):
    return v[..., 0] ** 3 - 3.0 * v[..., 0] * u[0] ** 2


def _monkey_gu(u, v):
    return _col(-6.0 * v[..., 0] * u[0])


def _monkey_gv(u, v):
    return _col(3.0 * v[..., 0] ** 2 - 3.0 * u[0] ** 2)


# (e) anti-saddle
def _anti_f(u, v):
    return -u[0] ** 2 + v[..., 0] ** 2 + 2.0 * u[0] * v[..., 0]


def _anti_gu(u, v):
    return _col(-2.0 * u[0] + 2.0 * v[..., 0])


def _anti_gv(u, v):
    return _col(2.0 * v[..., 0] + 2.0 * u[0])


# (f) weapons
def _weapons_terms(u, v):
    x, y = u[0], v[..., 0]
    left = np.exp(-(y + 0.5))
    right = np.exp(y - 0.5)
    a = np.exp(-10.0 * (x + 0.5) * left)
    b = np.exp(-10.0 * (0.5 - x) * right)
    return a, b, left, right


def _weapons_f(u, v):
    a, b, _, _ = _weapons_terms(u, v)
    return a + b


def _weapons_gu(u, v):
    a, b, left, right = _weapons_terms(u, v)
    return _col(-10.0 * left * a + 10.0 * right * b)


def _weapons_gv(u, v):
    a, b, left, right = _weapons_terms(u, v)
    x = u[0]
    return _col(10.0 * (x + 0.5) * left * a - 10.0 * (0.5 - x) * right * b)


# (g) unconstrained quadratic
def _quad_f(u, v):
    return -0.5 * u[0] ** 2 + 2.0 * u[0] * v[..., 0] - v[..., 0] ** 2


def _quad_gu(u, v):
    return _col(-u[0] + 2.0 * v[..., 0])


def _quad_gv(u, v):
    return _col(2.0 * u[0] - 2.0 * v[..., 0])


def _monkey_phi(u):
    # max of the endpoint v = 0.5 and the interior local max v = -|u|
    return max(0.125 - 1.5 * u**2, 2.0 * abs(u) ** 3)


def _monkey_R(u):
    top, inner = 0.125 - 1.5 * u**2, 2.0 * abs(u) ** 3
    if top > inner:
        return (0.5,)
    if inner > top:
        return (-abs(u),)
    return (-abs(u), 0.5)


def _anti_R(u):
    if u > 0:
        return (0.5,)
    if u < 0:
        return (-0.5,)
    return (-0.5, 0.5)


def _seesaw_phi(u):
    return 0.5 * abs(np.sin(np.pi * u))


def _make(name, f, gu, gv, domain=SQUARE):
    return MinimaxProblem(f, gu, gv, domain, domain, vectorized=True, name=name)


def _build_catalog() -> dict:
    unbounded = BoxDomain.unbounded()
    surfaces = [
        BenchmarkSurface(
            name="saddle",
            formula="u^2 - v^2",
            problem=_make("saddle", _saddle_f, _saddle_gu, _saddle_gv),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            minimax_points=((0.0, 0.0),),
            saddle_points=((0.0, 0.0),),
            phi_closed_form=lambda u: u**2,
            R_closed_form=lambda u: (0.0,),
        ),
        BenchmarkSurface(
            name="rotated_saddle",
            formula="u^2 - v^2 + 2uv",
            problem=_make("rotated_saddle", _rot_f, _rot_gu, _rot_gv),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            minimax_points=((0.0, 0.0),),
            saddle_points=((0.0, 0.0),),
            phi_closed_form=lambda u: 2.0 * u**2,
            R_closed_form=lambda u: (u,),
        ),
        BenchmarkSurface(
            name="seesaw",
            formula="-v sin(pi u)",
            problem=_make("seesaw", _seesaw_f, _seesaw_gu, _seesaw_gv),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            # every (0, v) with v in [-0.5, 0.5] is a minimax point
            minimax_points=(),
            saddle_points=((0.0, 0.0),),
            phi_closed_form=_seesaw_phi,
        ),
        BenchmarkSurface(
            name="monkey_saddle",
            formula="v^3 - 3 v u^2",
            problem=_make("monkey_saddle", _monkey_f, _monkey_gu, _monkey_gv),
            minimax_u_set=SolutionSet(points=((-0.25,), (0.25,))),
            minimax_points=((-0.25, -0.25), (0.25, -0.25), (-0.25, 0.5), (0.25, 0.5)),
            phi_closed_form=_monkey_phi,
            R_closed_form=_monkey_R,
        ),
        BenchmarkSurface(
            name="anti_saddle",
            formula="-u^2 + v^2 + 2uv",
            problem=_make("anti_saddle", _anti_f, _anti_gu, _anti_gv),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            minimax_points=((0.0, -0.5), (0.0, 0.5)),
            phi_closed_form=lambda u: -(u**2) + 0.25 + abs(u),
            R_closed_form=_anti_R,
        ),
        BenchmarkSurface(
            name="weapons",
            formula="exp(-10(u+.5)exp(-(v+.5))) + exp(-10(.5-u)exp(v-.5))",
            problem=_make("weapons", _weapons_f, _weapons_gu, _weapons_gv),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            minimax_points=((0.0, -0.5), (0.0, 0.5)),
        ),
        BenchmarkSurface(
            name="unconstrained_quadratic",
            formula="-0.5u^2 + 2uv - v^2",
            problem=_make("unconstrained_quadratic", _quad_f, _quad_gu, _quad_gv, unbounded),
            minimax_u_set=SolutionSet(points=((0.0,),)),
            minimax_points=((0.0, 0.0),),
            phi_closed_form=lambda u: 0.5 * u**2,
            R_closed_form=lambda u: (u,),
        ),
    ]
    return {s.name: s for s in surfaces}


CATALOG = _build_catalog()
SURFACE_NAMES = tuple(CATALOG)


def get_surface(name: str) -> BenchmarkSurface:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown surface {name!r}; choose from {', '.join(SURFACE_NAMES)}") from None
