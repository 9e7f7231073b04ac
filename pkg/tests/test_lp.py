import numpy as np
import pytest

from supcenter import lp
from supcenter.constraints import Polytope
from supcenter.errors import InfeasiblePolytopeError, LPNumericalError

from oracles import scipy_solve


def random_feasible_lp(rng, n, m, with_eq=False, with_bounds=False):
    """LP that is feasible by construction (rhs built around a known point)."""
    x0 = rng.uniform(-1, 1, n)
    a_ub = rng.uniform(-1, 1, (m, n))
    b_ub = a_ub @ x0 + rng.uniform(0.1, 1.0, m)
    a_eq = b_eq = None
    if with_eq:
        a_eq = rng.uniform(-1, 1, (1, n))
        b_eq = a_eq @ x0
    bounds = None
    if with_bounds:
        bounds = [(-2.0, 2.0)] * n
    else:
        # cap the box so the problem stays bounded
        eye = np.eye(n)
        a_ub = np.vstack([a_ub, eye, -eye])
        b_ub = np.concatenate([b_ub, np.full(2 * n, 3.0)])
    return lp.LinearProgram(c=rng.uniform(-1, 1, n), a_ub=a_ub, b_ub=b_ub,
                            a_eq=a_eq, b_eq=b_eq, bounds=bounds)


def test_matches_scipy_on_random_instances():
    rng = np.random.default_rng(7)
    for trial in range(60):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(1, 8))
        prob = random_feasible_lp(rng, n, m, with_eq=trial % 3 == 0,
                                  with_bounds=trial % 2 == 0)
        ours = lp.solve(prob)
        status, value, _ = scipy_solve(prob)
        assert ours.status == status == lp.OPTIMAL, f"trial {trial}"
        assert ours.value == pytest.approx(value, abs=1e-7), f"trial {trial}"


def test_max_sense():
    prob = lp.LinearProgram(c=np.array([1.0, 2.0]), sense="max",
                            a_ub=np.vstack([np.eye(2), -np.eye(2)]),
                            b_ub=np.ones(4))
    sol = lp.solve(prob)
    assert sol.status == lp.OPTIMAL
    assert sol.value == pytest.approx(3.0, abs=1e-9)


def test_infeasible_detected():
    # x <= -1 and x >= 1 cannot both hold
    prob = lp.LinearProgram(c=np.ones(1), a_ub=np.array([[1.0], [-1.0]]),
                            b_ub=np.array([-1.0, -1.0]))
    assert lp.solve(prob).status == lp.INFEASIBLE


def test_unbounded_detected():
    prob = lp.LinearProgram(c=np.array([-1.0]), a_ub=np.array([[-1.0]]),
                            b_ub=np.array([0.0]))
    assert lp.solve(prob).status == lp.UNBOUNDED


def test_equality_only_system():
    prob = lp.LinearProgram(c=np.array([1.0, 1.0]),
                            a_eq=np.array([[1.0, 1.0]]), b_eq=np.array([1.0]),
                            bounds=[(0.0, None)] * 2)
    sol = lp.solve(prob)
    assert sol.status == lp.OPTIMAL
    assert sol.value == pytest.approx(1.0, abs=1e-9)


def test_solution_is_bitwise_deterministic():
    rng = np.random.default_rng(99)
    prob = random_feasible_lp(rng, 4, 6)
    first = lp.solve(prob)
    for _ in range(3):
        again = lp.solve(prob)
        assert again.value == first.value
        assert np.array_equal(again.x, first.x)


def test_iteration_cap_raises_instead_of_returning_garbage():
    rng = np.random.default_rng(5)
    prob = random_feasible_lp(rng, 5, 10)
    with pytest.raises(LPNumericalError):
        lp.solve(prob, max_iter=1)


def test_distance_to_polytope_inside_and_outside():
    box = Polytope.box(2, 1.0)
    dist, point = lp.distance_to_polytope(np.array([0.2, -0.3]), box)
    assert dist == 0.0
    assert np.array_equal(point, np.array([0.2, -0.3]))
    dist, point = lp.distance_to_polytope(np.array([2.0, 0.0]), box)
    assert dist == pytest.approx(1.0, abs=1e-9)
    assert point[0] == pytest.approx(1.0, abs=1e-9)


def test_distance_to_empty_polytope_raises():
    empty = Polytope(a_ub=np.array([[1.0], [-1.0]]), b_ub=np.array([-1.0, -1.0]))
    with pytest.raises(InfeasiblePolytopeError):
        lp.distance_to_polytope(np.zeros(1), empty)
