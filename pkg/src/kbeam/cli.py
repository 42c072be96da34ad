"""``kbeam`` command line: sweeps, single-trial diagnostics and self-checks.

Exit codes: 0 success, 1 configuration error, 2 runtime failure (including
a failed ``validate``).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness, oracle
from .hull import min_norm_point
from .problem import validate_gradients
from .surfaces import CATALOG, SURFACE_NAMES, get_surface


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common(p: argparse.ArgumentParser):
    p.add_argument("--surface", required=True, help=f"one of: {', '.join(SURFACE_NAMES)}")
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--rho0", type=float, default=0.1, help="min-step size is rho0 / i")
    p.add_argument("--eta0", type=float, default=0.1, help="max-step size is eta0 / i")
    p.add_argument("--eps", type=_float_list, default=None, help="eps_1,eps_2,... (default: all zero)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--stationarity-every", type=int, default=None, metavar="M")
    p.add_argument("--out", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kbeam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="multi-trial sweep over beam sizes")
    _common(p_run)
    p_run.add_argument("--k", type=_int_list, default=(1, 2, 5, 10))
    p_run.add_argument("--trials", type=int, default=100)
    p_run.add_argument("--workers", type=int, default=1)

    p_diag = sub.add_parser("diagnose", help="per-iteration beam coverage for one trial")
    _common(p_diag)
    p_diag.add_argument("--k", type=int, required=True)
    p_diag.add_argument("--trial", type=int, default=0)

    p_val = sub.add_parser("validate", help="gradient and oracle self-checks")
    p_val.add_argument("--seed", type=int, default=0)
    return parser


def self_checks(seed: int = 0) -> list:
    """Gradient, grid-oracle and hull checks; returns ``(name, ok, detail)`` rows."""
    rng = np.random.default_rng(seed)
    rows = []
    for name, s in CATALOG.items():
        pts = [(rng.uniform(-0.49, 0.49, 1), rng.uniform(-0.49, 0.49, 1)) for _ in range(100)]
        err = validate_gradients(s.problem, pts, h=1e-5).max_error
        rows.append((f"gradients/{name}", err <= 1e-5, f"max rel err {err:.2e}"))

    h = 1e-3
    for name in ("saddle", "anti_saddle", "unconstrained_quadratic"):
        s = get_surface(name)
        vgrid = harness.oracle_vgrid(s, h)
        urange = (-1.0, 1.0) if name == "unconstrained_quadratic" else (-0.5, 0.5)
        l = oracle.estimate_lipschitz(s.problem, oracle.Grid1D(*urange, 0.05), vgrid).l
        worst = max(
            abs(oracle.phi_grid(s.problem, [u], vgrid) - s.phi_closed_form(u))
            for u in rng.uniform(*urange, 50)
        )
        rows.append((f"phi_grid/{name}", worst <= l * h, f"max err {worst:.2e} vs l*h {l * h:.2e}"))

    worst = 0.0
    for _ in range(200):
        Z = rng.normal(size=(rng.integers(1, 7), rng.integers(1, 5)))
        x = min_norm_point(Z, tol=1e-9).point
        worst = min(worst, float(np.min(Z @ x - x @ x)))
    rows.append(("hull/wolfe_certificate", worst >= -1e-9, f"min gap {worst:.2e}"))
    return rows


def _config(args, k_values, workers=1) -> harness.ExperimentConfig:
    return harness.ExperimentConfig(
        surface=args.surface,
        k_values=k_values,
        trials=getattr(args, "trials", 1),
        iterations=args.iters,
        rho0=args.rho0,
        eta0=args.eta0,
        eps_sequence=args.eps,
        seed=args.seed,
        stationarity_every=args.stationarity_every,
        workers=workers,
        out=args.out,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    if args.command == "validate":
        try:
            rows = self_checks(args.seed)
        except Exception as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for name, ok, detail in rows:
            print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        return 0 if all(ok for _, ok, _ in rows) else 2

    try:
        if args.command == "run":
            config = _config(args, args.k, args.workers)
        else:
            config = _config(args, (args.k,))
        config.validate()
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "run":
            result = harness.run_experiment(config)
            for k in sorted(result.summary):
                mean, std = result.summary[k]
                print(f"{config.surface} K={k}: mean dist {mean[-1]:.4f} (std {std[-1]:.4f}) at iter {len(mean)}")
        else:
            rows = harness.diagnose(config, args.k, trial=args.trial)
            last = rows[-1]
            print(f"{config.surface} K={args.k}: dH(R,A)={last.dH_R_A:.4g} dH(A,S)={last.dH_A_S:.4g} at iter {last.iteration}")
    except harness.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
