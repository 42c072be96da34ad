"""Multi-trial, multi-K experiment sweeps over the benchmark surfaces.

Each (K, trial) pair gets its own generator seeded from a 64-bit mix of the
master seed, K and the trial index, so trajectories never depend on which
other K values or trials share the sweep, nor on the worker count.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from . import oracle
from .optimizer import Constant, RunConfig, Schedule, Tabulated, run
from .surfaces import SURFACE_NAMES, BenchmarkSurface, get_surface

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

TRIALS_HEADER_TAIL = ["dist", "phi_hat", "stop_reason"]
SUMMARY_HEADER = ["surface", "k", "iter", "mean_dist", "std_dist"]


def splitmix64(x: int) -> int:
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(seed: int, k: int, trial: int) -> int:
    """Child seed for trial ``trial`` of beam size ``k``."""
    h = splitmix64(seed & MASK64)
    h = splitmix64(h ^ (k & MASK64))
    return splitmix64(h ^ (trial & MASK64))


class ConfigError(ValueError):
    """Invalid experiment configuration (reported before any work starts)."""


@dataclass
class ExperimentConfig:
    surface: str = "saddle"
    k_values: tuple = (1, 2, 5, 10)
    trials: int = 100
    iterations: int = 200
    rho0: float = 0.1
    eta0: float = 0.1
    # None means eps_i = 0; otherwise explicit eps_1, eps_2, ... (last repeats)
    eps_sequence: Optional[tuple] = None
    seed: int = 0
    stationarity_every: Optional[int] = None
    workers: int = 1
    out: Optional[str] = None

    def validate(self):
        if self.surface not in SURFACE_NAMES:
            raise ConfigError(f"unknown surface {self.surface!r}; choose from {', '.join(SURFACE_NAMES)}")
        if not self.k_values or any(int(k) != k or k < 1 for k in self.k_values):
            raise ConfigError(f"beam sizes must be integers >= 1, got {self.k_values!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.rho0 < 0 or self.eta0 < 0:
            raise ConfigError("step scales must be >= 0")
        if self.eps_sequence is not None and (
            not self.eps_sequence or any(e < 0 for e in self.eps_sequence)
        ):
            raise ConfigError("eps sequence must be nonempty and >= 0")
        if self.stationarity_every is not None and self.stationarity_every < 1:
            raise ConfigError("stationarity check interval must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.out is not None:
            _check_writable(Path(self.out))

    def schedule(self) -> Schedule:
        eps = Constant(0.0) if self.eps_sequence is None else Tabulated(self.eps_sequence)
        return Schedule.harmonic(self.rho0, self.eta0, eps)


def _check_writable(out: Path):
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    if not out.is_dir() or not os.access(out, os.W_OK):
        raise ConfigError(f"output directory {out} is not writable")


@dataclass(frozen=True)
class TrialRecord:
    surface: str
    k: int
    trial: int
    iteration: int
    u: tuple
    dist: float
    phi_hat: float
    stop_reason: str


@dataclass
class TrialResult:
    surface: str
    k: int
    trial: int
    u: np.ndarray  # (iterations, dim_u)
    dist: np.ndarray
    phi_hat: np.ndarray
    stop_reason: str

    def records(self) -> Iterator[TrialRecord]:
        for i in range(len(self.dist)):
            yield TrialRecord(
                self.surface, self.k, self.trial, i + 1, tuple(self.u[i]),
                float(self.dist[i]), float(self.phi_hat[i]), self.stop_reason,
            )


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    trials: list = field(default_factory=list)
    # k -> (mean_dist, std_dist), each indexed by iteration - 1
    summary: dict = field(default_factory=dict)

    def records(self) -> Iterator[TrialRecord]:
        for t in self.trials:
            yield from t.records()

    def final_distances(self, k: int) -> np.ndarray:
        return np.array([t.dist[-1] for t in self.trials if t.k == k])


def distances(u_traj: np.ndarray, surface: BenchmarkSurface) -> np.ndarray:
    """Distance of every row of ``u_traj`` to the surface's minimax u-set."""
    sol = surface.minimax_u_set
    best = np.full(len(u_traj), np.inf)
    for p in sol.points:
        best = np.minimum(best, np.linalg.norm(u_traj - np.asarray(p, dtype=float), axis=1))
    for lo, hi in sol.intervals:
        x = u_traj[:, 0]
        best = np.minimum(best, np.maximum(np.maximum(lo - x, 0.0), x - hi))
    return best


def run_trial(config: ExperimentConfig, k: int, trial: int) -> TrialResult:
    surface = get_surface(config.surface)
    us, phis = [], []

    def observe(i, u, beam, phi_hat):
        us.append(u)
        phis.append(phi_hat)

    rc = RunConfig(
        K=int(k),
        N=config.iterations,
        schedule=config.schedule(),
        check_every=config.stationarity_every,
        init_u=surface.init_u,
        init_v=surface.init_v,
    )
    rng = np.random.default_rng(mix_seed(config.seed, int(k), trial))
    state = run(surface.problem, rc, observe, rng=rng)
    u = np.array(us, dtype=float).reshape(len(us), surface.problem.dim_u)
    return TrialResult(
        config.surface, int(k), trial, u, distances(u, surface),
        np.array(phis, dtype=float), state.stop_reason,
    )


def _run_task(args):
    return run_trial(*args)


def summarize(trials, k_values) -> dict:
    """Per-(K, iteration) mean and sample std of the distance.

    Trials stopped early only contribute to the iterations they reached; a
    single contributing trial has std 0.
    """
    summary = {}
    for k in k_values:
        rows = [t.dist for t in trials if t.k == k]
        n_iter = max(len(r) for r in rows)
        if n_iter == 0:
            summary[int(k)] = (np.empty(0), np.empty(0))
            continue
        padded = np.full((len(rows), n_iter), np.nan)
        for j, r in enumerate(rows):
            padded[j, : len(r)] = r
        count = np.sum(~np.isnan(padded), axis=0)
        mean = np.nanmean(padded, axis=0)
        std = np.zeros(n_iter)
        many = count > 1
        if np.any(many):
            std[many] = np.nanstd(padded[:, many], axis=0, ddof=1)
        summary[int(k)] = (mean, std)
    return summary


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run every (K, trial) pair; results are ordered by (K, trial) regardless of workers."""
    config.validate()
    k_values = sorted({int(k) for k in config.k_values})
    tasks = [(config, k, t) for k in k_values for t in range(config.trials)]
    if config.workers == 1:
        trials = [run_trial(*task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            trials = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * config.workers))))
    trials.sort(key=lambda t: (t.k, t.trial))
    result = ExperimentResult(config, trials, summarize(trials, k_values))
    if config.out is not None:
        write_csv(result, config.out)
    return result


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(result: ExperimentResult, path) -> tuple[Path, Path]:
    """Write ``trials.csv`` and ``summary.csv`` into directory ``path``."""
    if not result.trials:
        raise ValueError("no trial records to write")
    out = Path(path)
    dim_u = result.trials[0].u.shape[1]
    trials_path = out / "trials.csv"
    summary_path = out / "summary.csv"
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(trials_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["surface", "k", "trial", "iter"] + [f"u{j}" for j in range(dim_u)] + TRIALS_HEADER_TAIL)
            for t in sorted(result.trials, key=lambda t: (t.k, t.trial)):
                for i in range(len(t.dist)):
                    w.writerow(
                        [t.surface, t.k, t.trial, i + 1]
                        + [_fmt(x) for x in t.u[i]]
                        + [_fmt(t.dist[i]), _fmt(t.phi_hat[i]), t.stop_reason]
                    )
        with open(summary_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SUMMARY_HEADER)
            surface = result.trials[0].surface
            for k in sorted(result.summary):
                mean, std = result.summary[k]
                for i in range(len(mean)):
                    w.writerow([surface, k, i + 1, _fmt(mean[i]), _fmt(std[i])])
    except OSError as exc:
        raise OSError(f"failed writing results to {out}: {exc}") from exc
    return trials_path, summary_path


# -- diagnostics --------------------------------------------------------------

DIAGNOSTIC_HEADER = [
    "iter", "u0", "phi_hat", "dH_R_A", "dH_A_S", "zeta", "delta", "l", "lemma5_condition", "lemma5_holds",
]


def oracle_vgrid(surface: BenchmarkSurface, step: float = 1e-3) -> oracle.Grid1D:
    dom = surface.problem.domain_v
    if dom.is_bounded:
        return oracle.Grid1D(float(dom.lower[0]), float(dom.upper[0]), step)
    # unconstrained surface: finite window wide enough for |u| <= 1
    return oracle.Grid1D(-5.0, 5.0, step)


@dataclass
class DiagnosticRow:
    iteration: int
    u: float
    phi_hat: float
    dH_R_A: float
    dH_A_S: float
    zeta: float
    delta: float
    l: float
    condition: bool
    holds: bool
    beam: np.ndarray = field(default=None, repr=False)


def diagnose(
    config: ExperimentConfig, k: int, trial: int = 0, grid_step: float = 1e-3, u0=None, beam0=None
) -> list:
    """Per-iteration coverage diagnostics of the beam against grid ground truth.

    For every iterate, records the one-sided Hausdorff distances from the
    global maximisers R(u) to the beam and from the beam to the local maxima
    S(u), the global/non-global gap zeta, and whether the separation
    condition ``delta < 0.5 (zeta - eps) / l`` holds with ``delta`` the larger
    of the two distances. ``holds`` checks the separation conclusion: every
    eps-maximal beam member is within ``delta`` (plus half a grid step) of a
    grid global maximiser. ``u0``/``beam0`` override the seeded start.
    """
    config.validate()
    surface = get_surface(config.surface)
    p = surface.problem
    if p.dim_v != 1:
        raise ConfigError("diagnostics need a one-dimensional v")
    vgrid = oracle_vgrid(surface, grid_step)
    ubox = surface.init_u if not p.domain_u.is_bounded else p.domain_u
    ugrid = oracle.Grid1D(float(ubox.lower[0]), float(ubox.upper[0]), 1e-2)
    l = oracle.estimate_lipschitz(p, ugrid, vgrid).l
    sched = config.schedule()

    rows = []

    def observe(i, u, beam, phi_hat):
        R = oracle.R_eps_grid(p, u, vgrid, 0.0)
        S = oracle.local_maxima_grid(p, u, vgrid)
        d_ra = oracle.hausdorff_one_sided(R, beam)
        d_as = oracle.hausdorff_one_sided(beam, S)
        zeta = oracle.zeta_gap(p, u, vgrid)
        eps = sched.at(i)[2]
        delta = max(d_ra, d_as)
        cond = l > 0 and delta < 0.5 * (zeta - eps) / l
        holds = True
        if cond:
            vals = p.values(u, beam)
            selected = beam[vals.max() - vals <= eps]
            holds = oracle.hausdorff_one_sided(selected, R) <= delta + 0.5 * vgrid.step
        rows.append(DiagnosticRow(i, float(u[0]), phi_hat, d_ra, d_as, zeta, delta, l, bool(cond), bool(holds), beam))

    rc = RunConfig(
        K=int(k), N=config.iterations, schedule=sched, check_every=config.stationarity_every,
        init_u=surface.init_u, init_v=surface.init_v, u0=u0, beam0=beam0,
    )
    run(p, rc, observe, rng=np.random.default_rng(mix_seed(config.seed, int(k), trial)))
    if config.out is not None:
        write_diagnostics(rows, config.out)
    return rows


def write_diagnostics(rows, path) -> Path:
    out = Path(path)
    target = out / "diagnostics.csv"
    try:
        out.mkdir(parents=True, exist_ok=True)
        with open(target, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(DIAGNOSTIC_HEADER)
            for r in rows:
                zeta = "inf" if math.isinf(r.zeta) else _fmt(r.zeta)
                w.writerow([
                    r.iteration, _fmt(r.u), _fmt(r.phi_hat), _fmt(r.dH_R_A), _fmt(r.dH_A_S),
                    zeta, _fmt(r.delta), _fmt(r.l), int(r.condition), int(r.holds),
                ])
    except OSError as exc:
        raise OSError(f"failed writing diagnostics to {out}: {exc}") from exc
    return target
