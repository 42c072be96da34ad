import math

import numpy as np
import pytest

from kbeam import oracle
from kbeam.harness import oracle_vgrid
from kbeam.optimizer import RunConfig, run
from kbeam.problem import BoxDomain, MinimaxProblem
from kbeam.surfaces import get_surface

H = 1e-3
VGRID = oracle.Grid1D(-0.5, 0.5, H)
ANTI = get_surface("anti_saddle").problem
SADDLE = get_surface("saddle").problem
SQUARE = BoxDomain.cube(-0.5, 0.5)


def const(c):
    return MinimaxProblem(
        lambda u, v: c + 0.0 * v[..., 0],
        lambda u, v: 0.0 * v,
        lambda u, v: 0.0 * v,
        SQUARE, SQUARE, vectorized=True,
    )


def test_grid_endpoints_exact():
    g = oracle.Grid1D(-0.5, 0.5, H)
    assert g.size == 1001
    assert g.values[0] == -0.5 and g.values[-1] == 0.5
    assert 0.0 in g.values
    with pytest.raises(ValueError):
        oracle.Grid1D(0, 1, 0.0)


def test_phi_grid_examples():
    assert oracle.phi_grid(ANTI, [0.2], VGRID) == pytest.approx(0.41)
    for u in (-0.3, 0.0, 0.45):
        assert oracle.phi_grid(SADDLE, [u], VGRID) == u**2
    assert oracle.phi_grid(const(1.5), [0.1], VGRID) == 1.5


def test_R_eps_examples():
    assert sorted(oracle.R_eps_grid(ANTI, [0.0], VGRID, 0.0)[:, 0]) == [-0.5, 0.5]
    assert oracle.R_eps_grid(ANTI, [0.2], VGRID, 0.0)[:, 0].tolist() == [0.5]
    assert len(oracle.R_eps_grid(ANTI, [0.2], VGRID, 10.0)) == VGRID.size


def test_local_maxima_examples():
    assert oracle.local_maxima_grid(ANTI, [0.2], VGRID)[:, 0].tolist() == [-0.5, 0.5]
    assert oracle.local_maxima_grid(SADDLE, [0.3], VGRID)[:, 0].tolist() == [0.0]
    seesaw = get_surface("seesaw").problem
    # f(0.2, v) = -v sin(0.2 pi) is decreasing in v
    assert oracle.local_maxima_grid(seesaw, [0.2], VGRID)[:, 0].tolist() == [-0.5]
    # a flat function is one plateau: every point counts
    assert len(oracle.local_maxima_grid(const(0.0), [0.0], VGRID)) == VGRID.size


def test_hausdorff_examples():
    assert oracle.hausdorff_one_sided([0.5], [0.45, -0.3]) == pytest.approx(0.05)
    assert oracle.hausdorff_one_sided([0.45, -0.3], [-0.5, 0.5]) == pytest.approx(0.2)
    X = np.random.default_rng(0).normal(size=(5, 2))
    assert oracle.hausdorff_one_sided(X, X) == 0.0
    with pytest.raises(ValueError):
        oracle.hausdorff_one_sided([], [0.1])


def test_zeta_examples():
    assert oracle.zeta_gap(ANTI, [0.2], VGRID) == pytest.approx(0.40)
    assert math.isinf(oracle.zeta_gap(ANTI, [0.0], VGRID))
    assert math.isinf(oracle.zeta_gap(SADDLE, [0.13], VGRID))


def test_lipschitz_examples():
    ugrid = oracle.Grid1D(-0.5, 0.5, 0.05)
    est = oracle.estimate_lipschitz(SADDLE, ugrid, VGRID)
    assert abs(est.l - 1.0) <= H
    assert est.r == 0.0
    assert est.B == pytest.approx(0.5)
    est = oracle.estimate_lipschitz(const(2.0), ugrid, VGRID)
    assert est.l == 0.0 and est.r == 0.0


def test_grid_minimax_examples():
    ugrid = oracle.Grid1D(-0.5, 0.5, H)
    u_hat, val = oracle.grid_minimax(ANTI, ugrid, np.array([-0.5, 0.0, 0.5]))
    assert abs(u_hat[0]) <= 1e-12
    assert val == pytest.approx(0.25)
    u_hat, _ = oracle.grid_minimax(SADDLE, oracle.Grid1D(-0.5, 0.5, 0.1), VGRID)
    assert abs(u_hat[0]) <= 1e-12
    u_hat, val = oracle.grid_minimax(SADDLE, [0.3], [0.2])
    assert u_hat.tolist() == [0.3] and val == pytest.approx(0.09 - 0.04)


def test_nested_grids_underestimate():
    coarse = oracle.Grid1D(-0.5, 0.5, 0.1)
    fine = oracle.Grid1D(-0.5, 0.5, 0.01)
    for name in ("weapons", "monkey_saddle", "seesaw"):
        p = get_surface(name).problem
        for u in np.linspace(-0.5, 0.5, 21):
            assert oracle.phi_grid(p, [u], coarse) <= oracle.phi_grid(p, [u], fine)


def test_global_maxima_are_local_maxima():
    for name in ("saddle", "rotated_saddle", "seesaw", "monkey_saddle", "anti_saddle", "weapons"):
        p = get_surface(name).problem
        for u in np.linspace(-0.5, 0.5, 11):
            R = oracle.R_eps_grid(p, [u], VGRID, 0.0)
            S = oracle.local_maxima_grid(p, [u], VGRID)
            assert oracle.hausdorff_one_sided(R, S) == 0.0


def test_zero_distance_means_same_argmax():
    # beam containing every grid maximiser: the discrete argmax equals R(u)
    rng = np.random.default_rng(1)
    for name in ("anti_saddle", "monkey_saddle", "weapons"):
        p = get_surface(name).problem
        for u in np.concatenate([rng.uniform(-0.5, 0.5, 10), [0.0, 0.25]]):
            R = oracle.R_eps_grid(p, [u], VGRID, 0.0)
            beam = np.vstack([R, rng.choice(VGRID.points[:, 0], 3)[:, None]])
            assert oracle.hausdorff_one_sided(R, beam) == 0.0
            vals = p.values(np.array([u]), beam)
            R_A = beam[vals == vals.max()]
            assert np.array_equal(np.unique(R_A), np.unique(R))


@pytest.mark.parametrize("name", ["saddle", "anti_saddle", "unconstrained_quadratic"])
def test_fixed_grid_minimax_bound(name):
    s = get_surface(name)
    if name == "unconstrained_quadratic":
        ugrid = oracle.Grid1D(-1, 1, H)
        vgrid = oracle.Grid1D(-5, 5, 0.01)
    else:
        ugrid = oracle.Grid1D(-0.5, 0.5, H)
        vgrid = oracle.Grid1D(-0.5, 0.5, 0.01)
    l = oracle.estimate_lipschitz(s.problem, oracle.Grid1D(ugrid.lower, ugrid.upper, 0.05), vgrid).l
    u_hat, _ = oracle.grid_minimax(s.problem, ugrid, vgrid)
    phi_true_min = min(s.phi_closed_form(u) for u in ugrid.values)
    assert s.phi_closed_form(u_hat[0]) - phi_true_min <= l * vgrid.step


def test_small_beam_error_selects_true_maximisers():
    """Whenever the beam covers R and S closely enough, the selected members are true maximisers."""
    rows = []

    def obs(i, u, beam, ph):
        R = oracle.R_eps_grid(ANTI, u, VGRID, 0.0)
        S = oracle.local_maxima_grid(ANTI, u, VGRID)
        delta = max(oracle.hausdorff_one_sided(R, beam), oracle.hausdorff_one_sided(beam, S))
        zeta = oracle.zeta_gap(ANTI, u, VGRID)
        rows.append((u, beam, R, delta, zeta))

    for seed in range(5):
        run(ANTI, RunConfig(K=2, N=200, seed=seed), obs)
    l = 2.0
    active = 0
    for u, beam, R, delta, zeta in rows:
        if delta < 0.5 * zeta / l:
            active += 1
            vals = ANTI.values(u, beam)
            selected = beam[vals == vals.max()]
            assert oracle.hausdorff_one_sided(selected, R) <= delta + 1e-12
    assert active > 100


def test_approximate_subgradient_on_quadratic():
    # phi(u) = 0.5 u^2 is convex; grad_u f at a v within delta of R(u0) = {u0}
    # is a (2 r delta B)-subgradient with r = 2 and B = 1 on [-1, 1]
    s = get_surface("unconstrained_quadratic")
    p = s.problem
    ugrid = oracle.Grid1D(-1, 1, 0.01)
    vgrid = oracle.Grid1D(-5, 5, 0.005)
    est = oracle.estimate_lipschitz(p, ugrid, vgrid)
    assert est.r == pytest.approx(2.0) and est.B == 1.0
    rng = np.random.default_rng(3)
    for _ in range(10):
        u0 = rng.uniform(-0.9, 0.9)
        delta = rng.uniform(0.0, 0.1)
        v = u0 + rng.choice([-1, 1]) * delta
        z = p.grad_u(np.array([u0]), np.array([v]))
        slack = oracle.subgradient_slack(p, [u0], z, ugrid, vgrid)
        assert slack >= -2 * est.r * delta * est.B - 1e-4


def test_phi_error_bound_helper():
    assert oracle.phi_grid_error_bound(2.0, VGRID) == pytest.approx(1e-3)
    g = oracle_vgrid(get_surface("saddle"))
    assert (g.lower, g.upper, g.step) == (-0.5, 0.5, 1e-3)
