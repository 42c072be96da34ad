import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbeam.problem import BoxDomain, MinimaxProblem, project, sample_uniform, validate_gradients
from kbeam.surfaces import get_surface

SQUARE = BoxDomain.cube(-0.5, 0.5)


def test_project_examples():
    assert project([0.7], SQUARE).tolist() == [0.5]
    assert project([0.2], SQUARE).tolist() == [0.2]
    assert project([-0.9, 0.1], BoxDomain.cube(-0.5, 0.5, 2)).tolist() == [-0.5, 0.1]


def test_project_dimension_mismatch():
    with pytest.raises(ValueError):
        project([0.1, 0.2], SQUARE)


def test_project_unbounded_is_identity():
    x = np.array([1e6, -3.0])
    assert np.array_equal(project(x, BoxDomain.unbounded(2)), x)


@settings(max_examples=200)
@given(
    st.lists(st.floats(-10, 10), min_size=3, max_size=3),
    st.lists(st.floats(-2, 2), min_size=3, max_size=3),
    st.lists(st.floats(0, 2), min_size=3, max_size=3),
)
def test_project_idempotent_and_identity_inside(x, lo, width):
    box = BoxDomain(np.array(lo), np.array(lo) + np.array(width))
    p = project(x, box)
    assert box.contains(p)
    assert np.array_equal(project(p, box), p)


def test_box_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        BoxDomain([1.0], [0.0])


def test_sample_uniform_degenerate_and_deterministic():
    box = BoxDomain([0.3], [0.3])
    assert sample_uniform(box, np.random.default_rng(1)).tolist() == [0.3]
    a = sample_uniform(SQUARE, np.random.default_rng(7))
    b = sample_uniform(SQUARE, np.random.default_rng(7))
    assert np.array_equal(a, b)


def test_sample_uniform_mean():
    x = sample_uniform(SQUARE, np.random.default_rng(3), size=10_000)
    assert x.shape == (10_000, 1)
    assert SQUARE.contains(x)
    # 3 sigma of the mean of 1e4 uniforms on a unit interval is ~0.0087
    assert abs(x.mean()) <= 0.02


def test_sample_uniform_rejects_unbounded():
    with pytest.raises(ValueError):
        sample_uniform(BoxDomain.unbounded(), np.random.default_rng(0))


def test_validate_gradients_saddle_point():
    s = get_surface("saddle")
    assert s.problem.grad_u(np.array([0.1]), np.array([0.2]))[0] == pytest.approx(0.2)
    rep = validate_gradients(s.problem, [([0.1], [0.2])], h=1e-5)
    assert rep.max_error <= 1e-8


def test_validate_gradients_quadratic_value():
    s = get_surface("unconstrained_quadratic")
    assert s.problem.grad_u(np.array([0.3]), np.array([0.1]))[0] == pytest.approx(-0.1)
    assert validate_gradients(s.problem, [([0.3], [0.1])]).max_error <= 1e-8


def test_validate_gradients_zero_function():
    zero = MinimaxProblem(
        lambda u, v: 0.0, lambda u, v: np.zeros(1), lambda u, v: np.zeros(1), SQUARE, SQUARE
    )
    assert validate_gradients(zero, [([0.0], [0.0]), ([0.1], [-0.2])]).max_error == 0.0


def test_validate_gradients_flags_wrong_gradient():
    bad = MinimaxProblem(
        lambda u, v: u[0] ** 2, lambda u, v: np.array([u[0]]), lambda u, v: np.zeros(1), SQUARE, SQUARE
    )
    assert validate_gradients(bad, [([0.3], [0.0])]).max_error > 0.1


def test_validate_gradients_skips_boundary_points():
    s = get_surface("saddle")
    with pytest.warns(UserWarning):
        rep = validate_gradients(s.problem, [([0.5], [0.0]), ([0.1], [0.1])])
    assert len(rep.skipped) == 1
    assert len(rep.errors) == 1


def test_non_vectorized_problem_batches():
    p = MinimaxProblem(
        lambda u, v: float(u[0] * v[0]),
        lambda u, v: np.array([v[0]]),
        lambda u, v: np.array([u[0]]),
        SQUARE,
        SQUARE,
    )
    vs = np.array([[0.1], [0.2]])
    assert p.values(np.array([2.0]), vs).tolist() == pytest.approx([0.2, 0.4])
    assert p.grads_u(np.array([2.0]), vs).shape == (2, 1)
