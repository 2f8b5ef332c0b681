import numpy as np
import pytest

from monoscope.simplex import feasible, solve_eq_lp


def test_simple_transport_lp():
    # min x0 + 2 x1 s.t. x0 + x1 = 1 -> x = (1, 0)
    res = solve_eq_lp([1.0, 2.0], [[1.0, 1.0]], [1.0])
    assert res.status == "optimal"
    assert res.objective == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(res.x, [1.0, 0.0], atol=1e-12)


def test_infeasible_detected():
    # x0 + x1 = -1 has no nonnegative solution
    res = solve_eq_lp([1.0, 1.0], [[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
    assert res.status == "infeasible"


def test_unbounded_detected():
    # min -x0 s.t. x0 - x1 = 0 lets x0 grow without bound
    res = solve_eq_lp([-1.0, 0.0], [[1.0, -1.0]], [0.0])
    assert res.status == "unbounded"


def test_negative_rhs_normalized():
    res = solve_eq_lp([1.0, 1.0], [[-1.0, -1.0]], [-3.0])
    assert res.status == "optimal"
    assert res.objective == pytest.approx(3.0, abs=1e-10)


def test_redundant_rows_are_harmless():
    A = [[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]
    b = [1.0, 1.0, 1.0]
    res = solve_eq_lp([0.0, 1.0, 0.5], A, b)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.5, abs=1e-10)


def test_degenerate_vertices_terminate():
    # heavily degenerate corner; Bland's rule must still terminate
    A = [[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0, 1.0], [1.0, -1.0, 0.0, 0.0]]
    b = [1.0, 1.0, 0.0]
    res = solve_eq_lp([1.0, 1.0, 2.0, 0.0], A, b)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.0, abs=1e-10)


def test_matches_barycentric_geometry():
    # envelope-shaped LP: interpolate the quadratic v = z^2 over z in {0,1,2}
    # at z = 1.5 -> best mix of 1 and 2 gives 0.5 * 1 + 0.5 * 4 = 2.5
    Z = np.array([[0.0], [1.0], [2.0]])
    v = np.array([0.0, 1.0, 4.0])
    A = np.vstack([Z.T, np.ones((1, 3))])
    res = solve_eq_lp(v, A, [1.5, 1.0])
    assert res.status == "optimal"
    assert res.objective == pytest.approx(2.5, abs=1e-10)


def test_feasible_is_hull_membership():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    A = np.vstack([verts.T, np.ones((1, 3))])
    assert feasible(A, [0.2, 0.2, 1.0])
    assert not feasible(A, [0.8, 0.8, 1.0])
    assert feasible(A, [0.5, 0.5, 1.0])  # boundary point


def test_random_lps_against_reference():
    # cross-check small random instances against scipy when available
    scipy_lp = pytest.importorskip("scipy.optimize").linprog
    rng = np.random.default_rng(1)
    for _ in range(40):
        m, n = int(rng.integers(1, 4)), int(rng.integers(2, 7))
        A = rng.normal(size=(m, n))
        x_feas = rng.uniform(0, 1, size=n)
        b = A @ x_feas  # guarantees feasibility
        c = rng.normal(size=n)
        ours = solve_eq_lp(c, A, b)
        ref = scipy_lp(c, A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
        if ours.status == "optimal":
            assert ref.status == 0
            assert ours.objective == pytest.approx(ref.fun, abs=1e-7)
        elif ours.status == "unbounded":
            assert ref.status == 3
