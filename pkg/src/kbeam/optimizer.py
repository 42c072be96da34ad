"""K-beam epsilon-subgradient descent for ``min_u max_v f(u, v)``.

The optimizer keeps K candidate maximisers (the beam) and alternates

* a min step: ``u <- project(u + rho_i * g)``, where ``g`` is the negated
  gradient, or a random hull element of the gradients, over the beam members
  whose value is within ``eps_i`` of the beam maximum;
* a max step: every beam member takes one projected gradient-ascent step
  at the new ``u``.

With ``K = 1`` and ``eps_i = 0`` this is plain alternating gradient descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .hull import DEFAULT_TOL, min_norm_point, sample_hull_point
from .problem import BoxDomain, MinimaxProblem, as_vector, project, sample_uniform

MAX_ITERATIONS = "max_iterations"
STATIONARY_POINT = "stationary_point"


class Harmonic:
    """Step size ``scale / i``."""

    def __init__(self, scale: float):
        self.scale = float(scale)

    def __call__(self, i: int) -> float:
        return self.scale / i

    def __repr__(self):
        return f"Harmonic({self.scale!r})"


class Constant:
    def __init__(self, value: float):
        self.value = float(value)

    def __call__(self, i: int) -> float:
        return self.value

    def __repr__(self):
        return f"Constant({self.value!r})"


class Tabulated:
    """Explicit values for i = 1, 2, ...; the last value repeats afterwards."""

    def __init__(self, values):
        self.values = tuple(float(v) for v in values)
        if not self.values:
            raise ValueError("empty sequence")

    def __call__(self, i: int) -> float:
        return self.values[min(i, len(self.values)) - 1]

    def __repr__(self):
        return f"Tabulated({self.values!r})"


@dataclass(frozen=True)
class Schedule:
    """Min-step sizes ``rho(i)``, max-step sizes ``eta(i)`` and slack ``epsilon(i)``, i >= 1."""

    rho: Callable[[int], float] = field(default_factory=lambda: Harmonic(0.1))
    eta: Callable[[int], float] = field(default_factory=lambda: Harmonic(0.1))
    epsilon: Callable[[int], float] = field(default_factory=lambda: Constant(0.0))

    @classmethod
    def harmonic(cls, rho0: float = 0.1, eta0: float = 0.1, epsilon=0.0) -> "Schedule":
        eps = epsilon if callable(epsilon) else Constant(epsilon)
        return cls(Harmonic(rho0), Harmonic(eta0), eps)

    def at(self, i: int) -> tuple[float, float, float]:
        rho, eta, eps = float(self.rho(i)), float(self.eta(i)), float(self.epsilon(i))
        if rho < 0 or eta < 0 or eps < 0 or not all(map(math.isfinite, (rho, eta, eps))):
            raise ValueError(f"schedule values at i={i} must be finite and >= 0: {(rho, eta, eps)}")
        return rho, eta, eps


@dataclass(frozen=True)
class DescentResult:
    direction: np.ndarray
    eps_argmax_indices: np.ndarray
    gradients: np.ndarray
    stationary: bool
    # hull weights of ``-direction`` over ``gradients``
    coefficients: np.ndarray
    k_max: int = 0


@dataclass(frozen=True)
class StationarityCertificate:
    stationary: bool
    certificate_norm: float


@dataclass
class RunConfig:
    K: int = 1
    N: int = 200
    schedule: Schedule = field(default_factory=Schedule)
    eps_tol_stationarity: float = DEFAULT_TOL
    # evaluate the stopping test every this many iterations; None disables it
    check_every: Optional[int] = None
    seed: Optional[int] = None
    u0: Optional[np.ndarray] = None
    beam0: Optional[np.ndarray] = None
    # "random": random hull element (default); "min_norm": minimum-norm element
    direction_rule: str = "random"
    # boxes for random initialisation when a domain is unbounded
    init_u: Optional[BoxDomain] = None
    init_v: Optional[BoxDomain] = None

    def validate(self):
        if not isinstance(self.K, (int, np.integer)) or self.K < 1:
            raise ValueError(f"K must be an integer >= 1, got {self.K!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"N must be an integer >= 1, got {self.N!r}")
        if self.check_every is not None and self.check_every < 1:
            raise ValueError("check_every must be >= 1 or None")
        if self.eps_tol_stationarity < 0:
            raise ValueError("stationarity tolerance must be >= 0")
        if self.direction_rule not in ("random", "min_norm"):
            raise ValueError(f"unknown direction rule {self.direction_rule!r}")


@dataclass
class RunState:
    iteration: int
    u: np.ndarray
    beam: np.ndarray
    best_phi_hat: float
    phi_hat: float
    stop_reason: str = MAX_ITERATIONS


def _eps_argmax(values: np.ndarray, eps: float) -> tuple[int, np.ndarray]:
    k_max = int(np.argmax(values))
    return k_max, np.flatnonzero(values[k_max] - values <= eps)


def descent_direction(
    problem: MinimaxProblem,
    u,
    beam,
    eps: float = 0.0,
    check_stationarity: bool = False,
    rng: Optional[np.random.Generator] = None,
    tol: float = DEFAULT_TOL,
    rule: str = "random",
    values: Optional[np.ndarray] = None,
) -> DescentResult:
    """Descent direction for the discrete max ``max_k f(u, v^k)``.

    ``values`` may carry precomputed ``f(u, v^k)`` to skip re-evaluation.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    beam = np.asarray(beam, dtype=float)
    if beam.ndim == 1:
        beam = beam[:, None]
    if len(beam) == 0:
        raise ValueError("empty beam")
    if values is None:
        values = problem.values(u, beam)
    k_max, idx = _eps_argmax(values, eps)
    Z = problem.grads_u(u, beam[idx])

    if check_stationarity:
        hp = min_norm_point(Z, tol=tol)
        if hp.norm <= tol:
            return DescentResult(np.zeros_like(Z[0]), idx, Z, True, hp.coefficients, k_max)

    if len(idx) == 1:
        return DescentResult(-Z[0], idx, Z, False, np.ones(1), k_max)
    if rule == "min_norm":
        hp = min_norm_point(Z, tol=tol)
    else:
        if rng is None:
            raise ValueError("a random generator is needed when several candidates tie")
        hp = sample_hull_point(Z, rng)
    return DescentResult(-hp.point, idx, Z, False, hp.coefficients, k_max)


def max_step(problem: MinimaxProblem, u, beam, eta: float) -> np.ndarray:
    """One projected gradient-ascent step for every beam member, at fixed ``u``."""
    if eta < 0:
        raise ValueError("eta must be >= 0")
    beam = np.asarray(beam, dtype=float)
    return project(beam + eta * problem.grads_v(u, beam), problem.domain_v)


def epsilon_stationarity_check(
    problem: MinimaxProblem, u, candidate_vs, eps: float = 0.0, tol: float = DEFAULT_TOL
) -> StationarityCertificate:
    """Whether 0 lies in the hull of grad_u f over the eps-maximal candidates."""
    if eps < 0 or tol < 0:
        raise ValueError("eps and tol must be >= 0")
    vs = np.asarray(candidate_vs, dtype=float)
    if vs.ndim == 1:
        vs = vs[:, None]
    if len(vs) == 0:
        raise ValueError("no candidates")
    _, idx = _eps_argmax(problem.values(u, vs), eps)
    hp = min_norm_point(problem.grads_u(u, vs[idx]), tol=max(tol, DEFAULT_TOL))
    return StationarityCertificate(hp.norm <= tol, hp.norm)


def initial_state(problem: MinimaxProblem, config: RunConfig, rng: np.random.Generator):
    """Starting ``u`` and beam: given values, else uniform draws (u first, then the beam)."""
    if config.u0 is not None:
        u = project(as_vector(config.u0, "u0"), problem.domain_u)
    else:
        u = sample_uniform(config.init_u or problem.domain_u, rng)
    if config.beam0 is not None:
        beam = np.asarray(config.beam0, dtype=float).reshape(-1, problem.dim_v)
        if len(beam) != config.K:
            raise ValueError(f"beam0 has {len(beam)} members, K={config.K}")
        beam = project(beam, problem.domain_v)
    else:
        beam = sample_uniform(config.init_v or problem.domain_v, rng, size=config.K)
    return u, beam


def run(
    problem: MinimaxProblem,
    config: RunConfig,
    observer: Optional[Callable[[int, np.ndarray, np.ndarray, float], None]] = None,
    rng: Optional[np.random.Generator] = None,
) -> RunState:
    """Run N iterations (or until the stopping test fires).

    The observer is called after every completed iteration with
    ``(i, u_i, beam_i, phi_A(u_i))``; the arrays are fresh each iteration and
    never mutated afterwards. Anything the observer raises propagates and
    ends the run.
    """
    config.validate()
    config.schedule.at(1)
    if rng is None:
        rng = np.random.default_rng(config.seed)
    u, beam = initial_state(problem, config, rng)
    lo_u, hi_u = problem.domain_u.lower, problem.domain_u.upper
    lo_v, hi_v = problem.domain_v.lower, problem.domain_v.upper

    values = problem.values(u, beam)
    state = RunState(0, u, beam, math.inf, float(values.max()))
    for i in range(1, config.N + 1):
        rho, eta, eps = config.schedule.at(i)
        check = config.check_every is not None and i % config.check_every == 0
        k_max = int(values.argmax())
        if not check and np.count_nonzero(values[k_max] - values <= eps) == 1:
            # common case: a single eps-maximal candidate, g = -grad_u f(u, v^kmax)
            direction = -problem.grads_u(u, beam[k_max : k_max + 1])[0]
        else:
            d = descent_direction(
                problem, u, beam, eps, check, rng,
                tol=config.eps_tol_stationarity, rule=config.direction_rule, values=values,
            )
            if d.stationary:
                state.stop_reason = STATIONARY_POINT
                return state
            direction = d.direction

        u = np.minimum(np.maximum(u + rho * direction, lo_u), hi_u)
        beam = np.minimum(np.maximum(beam + eta * problem.grads_v(u, beam), lo_v), hi_v)
        values = problem.values(u, beam)
        phi_hat = float(values.max())

        state.iteration = i
        state.u = u
        state.beam = beam
        state.phi_hat = phi_hat
        if phi_hat < state.best_phi_hat:
            state.best_phi_hat = phi_hat
        if observer is not None:
            observer(i, u, beam, phi_hat)
    return state
