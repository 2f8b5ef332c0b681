import math

import numpy as np
import pytest

from monoscope import (
    FiniteOperator,
    InputError,
    PairingSpace,
    antiderivative,
    build_kt,
    chi_chain_sum,
    chi_n,
    is_n_monotone,
    is_n_related,
    monotonicity_order,
    phi_chain_sum,
    phi_n,
    satisfies_cn,
)
from monoscope.randomops import (
    random_cyclically_monotone,
    random_monotone_scalar,
    random_multivalued_monotone,
    random_operator,
    random_query,
)
from brute import brute_chi, brute_chi_inf, brute_cycle_ok, brute_phi, brute_phi_inf
from conftest import rotation_sample, scalar_op

INF = math.inf


# -- frozen examples -------------------------------------------------------------


def test_phi1_identity_grid(identity_grid3):
    cv = phi_n(identity_grid3, 1, ((1.0,), (0.0,)))
    assert cv.value == 0.25  # maximizer u = 0.5 lies in the sample
    assert cv.argchain == (1,)


def test_phi_dominates_coupling_on_graph():
    rng = np.random.default_rng(2)
    for _ in range(10):
        T = random_operator(rng, int(rng.integers(1, 6)), 2)
        i = int(rng.integers(T.m))
        q = (T.xs[i], T.ys[i])
        c = T.space.pair(*q)
        for n in (1, 2, 3, INF):
            assert phi_n(T, n, q).value.value >= c - 1e-12


def test_phi_inf_two_point_sample(remark13_pair):
    # brute force over chain lengths <= m confirms the order-infinity value 0
    T2, _ = remark13_pair
    q = ((1.0,), (1.0,))
    got = phi_n(T2, INF, q).value.value
    assert got == brute_phi_inf(T2, q)
    assert got == 0.0
    # consistent with (1, 1) being infinitely related: phi_inf <= c = 1
    assert is_n_related(T2, INF, q)


def test_chi2_identity_endpoints(identity_grid3):
    for x, y in [(1.0, 0.0), (0.5, 1.0), (0.0, 0.0)]:
        cv = chi_n(identity_grid3, 2, ((x,), (y,)))
        assert cv.value.value == pytest.approx(x * x + y * y - x * y, abs=1e-12)


def test_chi_domain_is_product_grid(identity_grid3):
    assert chi_n(identity_grid3, 2, ((0.3,), (0.0,))).value.is_pos_inf
    assert chi_n(identity_grid3, 2, ((0.0,), (0.3,))).value.is_pos_inf
    assert chi_n(identity_grid3, 1, ((0.5,), (0.0,))).value.is_pos_inf  # off graph


def test_chi_equals_coupling_on_monotone_graph():
    rng = np.random.default_rng(3)
    for _ in range(20):
        T = random_monotone_scalar(rng, int(rng.integers(2, 8)))
        i = int(rng.integers(T.m))
        q = (T.xs[i], T.ys[i])
        c = T.space.pair(*q)
        for n in (2, 4, INF):
            assert chi_n(T, n, q).value.value == pytest.approx(c, abs=1e-9)


def test_empty_operator_conventions():
    T = FiniteOperator(PairingSpace(1, 1), [])
    assert phi_n(T, 3, ((0.0,), (0.0,))).value.is_neg_inf
    assert chi_n(T, 3, ((0.0,), (0.0,))).value.is_pos_inf
    assert monotonicity_order(T).order == INF
    assert is_n_monotone(T, INF)


# -- brute-force equivalence ------------------------------------------------------


def test_phi_chi_match_enumeration():
    rng = np.random.default_rng(42)
    for _ in range(40):
        m = int(rng.integers(1, 6))
        d = int(rng.integers(1, 3))
        T = random_operator(rng, m, d)
        queries = [random_query(rng, T.space)]
        i = int(rng.integers(m))
        queries.append((T.xs[i], T.ys[i]))
        for n in range(1, 5):
            for q in queries:
                assert phi_n(T, n, q).value.value == pytest.approx(
                    brute_phi(T, n, q), abs=1e-12
                )
                got = chi_n(T, n, q).value.value
                want = brute_chi(T, n, q)
                if math.isinf(want):
                    assert got == want
                else:
                    assert got == pytest.approx(want, abs=1e-12)


def test_phi_chi_inf_match_enumeration_on_cyclically_monotone():
    rng = np.random.default_rng(43)
    for _ in range(15):
        T = random_cyclically_monotone(rng, int(rng.integers(2, 6)), dim=int(rng.integers(1, 3)))
        i = int(rng.integers(T.m))
        for q in [random_query(rng, T.space), (T.xs[i], T.ys[i])]:
            assert phi_n(T, INF, q).value.value == pytest.approx(
                brute_phi_inf(T, q), abs=1e-12
            )
            got = chi_n(T, INF, q).value.value
            want = brute_chi_inf(T, q)
            if math.isinf(want):
                assert got == want
            else:
                assert got == pytest.approx(want, abs=1e-12)


def test_is_n_monotone_matches_direct_cycle_check():
    rng = np.random.default_rng(44)
    for _ in range(25):
        T = random_operator(rng, int(rng.integers(2, 5)), 1)
        for n in (2, 3, 4):
            assert is_n_monotone(T, n) == brute_cycle_ok(T, n, 1e-9)


def test_asymmetric_dual_systems_match_enumeration():
    # d1 != d2 with a dense custom pairing matrix
    rng = np.random.default_rng(45)
    for _ in range(25):
        d1, d2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        m = int(rng.integers(1, 5))
        sp = PairingSpace(d1, d2, rng.uniform(-1, 1, size=(d1, d2)))
        T = FiniteOperator(
            sp, list(zip(rng.uniform(-1, 1, (m, d1)), rng.uniform(-1, 1, (m, d2))))
        )
        i = int(rng.integers(m))
        for q in [(rng.uniform(-1, 1, d1), rng.uniform(-1, 1, d2)), (T.xs[i], T.ys[i])]:
            for n in (1, 2, 3):
                assert phi_n(T, n, q).value.value == pytest.approx(
                    brute_phi(T, n, q), abs=1e-12
                )
                got = chi_n(T, n, q).value.value
                want = brute_chi(T, n, q)
                assert got == want or abs(got - want) <= 1e-12
        for n in (2, 3):
            assert is_n_monotone(T, n) == brute_cycle_ok(T, n, 1e-9)


# -- monotonicity decisions --------------------------------------------------------


def test_everything_is_1_monotone():
    rng = np.random.default_rng(4)
    for _ in range(10):
        assert is_n_monotone(random_operator(rng, 4, 2), 1)


def test_two_point_monotone_sample_is_cyclically_monotone(remark13_pair):
    T2, _ = remark13_pair
    assert is_n_monotone(T2, INF)
    assert monotonicity_order(T2).order == INF


def test_rotation_quarter_turn_is_2_not_3():
    S = rotation_sample(math.pi / 2)
    assert is_n_monotone(S, 2)
    assert not is_n_monotone(S, 3)
    rep = monotonicity_order(S)
    assert rep.order == 2
    assert len(rep.witness.indices) == 3


def test_rotation_eighth_turn_order_4():
    assert monotonicity_order(rotation_sample(math.pi / 4)).order == 4


def test_witness_cycle_reproduces_its_sum():
    rng = np.random.default_rng(6)
    found = 0
    while found < 10:
        T = random_operator(rng, int(rng.integers(3, 7)), 2)
        rep = monotonicity_order(T)
        if rep.order == INF:
            continue
        found += 1
        idx = rep.witness.indices
        assert len(idx) == rep.order + 1
        assert len(set(idx)) == len(idx)  # minimal violating cycle is simple
        total = 0.0
        for a in range(len(idx)):
            j, k = idx[a], idx[(a + 1) % len(idx)]
            total += T.space.pair(T.xs[j] - T.xs[k], T.ys[j])
        assert total == pytest.approx(rep.witness.cycle_sum, abs=1e-9)
        assert rep.witness.cycle_sum < -1e-9
        assert not is_n_monotone(T, rep.order + 1)
        assert is_n_monotone(T, rep.order)


# -- ordering and symmetry invariants ----------------------------------------------


def test_phi_monotone_chi_antitone_in_n():
    rng = np.random.default_rng(7)
    for _ in range(10):
        T = random_operator(rng, int(rng.integers(2, 6)), 2)
        i = int(rng.integers(T.m))
        for q in [random_query(rng, T.space), (T.xs[i], T.ys[i])]:
            phis = [phi_n(T, n, q).value.value for n in (1, 2, 3, 4)]
            phis.append(phi_n(T, INF, q).value.value)
            assert all(a <= b + 1e-12 for a, b in zip(phis, phis[1:]))
            chis = [chi_n(T, n, q).value.value for n in (1, 2, 3, 4)]
            chis.append(chi_n(T, INF, q).value.value)
            assert all(b <= a + 1e-12 for a, b in zip(chis, chis[1:]))


def test_inverse_symmetry():
    rng = np.random.default_rng(8)
    for trial in range(10):
        custom = trial % 2 == 1
        T = random_operator(rng, int(rng.integers(1, 6)), 2, random_pairing=custom)
        Ti = T.inverse()
        x, y = random_query(rng, T.space)
        for n in (1, 2, 3, INF):
            a = phi_n(T, n, (x, y)).value.value
            b = phi_n(Ti, n, (y, x)).value.value
            assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_monotone_iff_chi_dominates_coupling():
    # n-monotone iff chi_n >= c - tol across the whole D(T) x R(T) grid
    rng = np.random.default_rng(9)
    for _ in range(15):
        T = random_operator(rng, int(rng.integers(2, 5)), 1)
        for n in (2, 3, INF):
            grid_ok = all(
                chi_n(T, n, (x, y)).value.value >= T.space.pair(x, y) - 1e-9
                for x in T.domain()
                for y in T.range_()
            )
            assert grid_ok == is_n_monotone(T, n)


def test_monotone_iff_phi_bounded_on_graph():
    # (n+1)-monotone iff phi_n <= c + tol on every graph point
    rng = np.random.default_rng(10)
    for _ in range(15):
        T = random_operator(rng, int(rng.integers(2, 5)), 1)
        for n in (1, 2, 3):
            graph_ok = all(
                phi_n(T, n, (T.xs[i], T.ys[i])).value.value
                <= T.space.pair(T.xs[i], T.ys[i]) + 1e-9
                for i in range(T.m)
            )
            assert graph_ok == is_n_monotone(T, n + 1)


def test_padding_invariance_under_duplicates():
    rng = np.random.default_rng(11)
    T = random_operator(rng, 5, 2)
    pts = list(zip(T.xs, T.ys)) + [(T.xs[2], T.ys[2])]
    Tp = FiniteOperator(T.space, pts)
    assert Tp.m == T.m
    q = random_query(rng, T.space)
    assert phi_n(T, 3, q).value == phi_n(Tp, 3, q).value
    assert chi_n(T, 3, q).value == chi_n(Tp, 3, q).value
    assert monotonicity_order(T).order == monotonicity_order(Tp).order


# -- relatedness and the chain condition -------------------------------------------


def test_remark13_relatedness(remark13_pair):
    T2, T4 = remark13_pair
    assert is_n_related(T2, INF, ((1.0,), (1.0,)))
    assert is_n_related(T2, INF, ((2.0,), (0.32,)))
    assert not is_n_related(T4, 3, ((0.0,), (0.0,)))
    margin = 0.0 - phi_n(T4, 2, ((0.0,), (0.0,))).value.value
    assert margin == pytest.approx(-0.36, abs=1e-12)


def test_graph_points_are_related_for_monotone_operators():
    rng = np.random.default_rng(12)
    for _ in range(10):
        T = random_monotone_scalar(rng, int(rng.integers(2, 8)))
        for i in range(T.m):
            assert is_n_related(T, 2, (T.xs[i], T.ys[i]))
            assert is_n_related(T, INF, (T.xs[i], T.ys[i]))


def test_relatedness_matches_direct_tuple_check():
    # enumerate every (n-1)-tuple inequality that defines n-relatedness
    rng = np.random.default_rng(13)
    for _ in range(20):
        T = random_operator(rng, int(rng.integers(2, 5)), 1)
        q = random_query(rng, T.space)
        n = int(rng.integers(2, 5))
        assert is_n_related(T, n, q) == brute_related(T, n, q, 1e-9)


def brute_related(T, n, q, tol) -> bool:
    import itertools

    x = np.atleast_1d(q[0])
    y = np.atleast_1d(q[1])
    for tup in itertools.product(range(T.m), repeat=n - 1):
        total = T.space.pair(x - T.xs[tup[-1]], y)
        for prev, cur in zip(tup, tup[1:]):
            total += T.space.pair(T.xs[cur] - T.xs[prev], T.ys[cur])
        total += T.space.pair(T.xs[tup[0]] - x, T.ys[tup[0]])
        if total < -tol:
            return False
    return True


def test_chain_condition_on_graph_and_identity():
    rng = np.random.default_rng(14)
    T = random_operator(rng, 5, 2)
    for i in range(T.m):
        assert satisfies_cn(T, 2, (T.xs[i], T.ys[i]))
        assert satisfies_cn(T, INF, (T.xs[i], T.ys[i]))
    # phi_1 - c = ||x - y||^2 / 4 - dist(midpoint, grid)^2 on a sampled identity:
    # keep the chain maximizer (x + y) / 2 inside the grid and |x - y| above
    # its resolution so the full-operator inequality phi_1 >= c survives sampling
    grid = scalar_op([(v, v) for v in np.linspace(-1, 1, 81)])
    for _ in range(10):
        x = rng.uniform(-0.7, 0.7)
        y = x + rng.choice([-1, 1]) * rng.uniform(0.1, 0.5)
        assert satisfies_cn(grid, 2, ((x,), (y,)))


def test_chain_condition_against_enumeration():
    rng = np.random.default_rng(15)
    S = rotation_sample(3 * math.pi / 4, count=12)
    for _ in range(10):
        q = random_query(rng, S.space)
        direct = brute_phi(S, 1, q) >= S.space.pair(*q) - 1e-9
        assert satisfies_cn(S, 2, q) == direct


# -- antiderivative ----------------------------------------------------------------


def test_antiderivative_identity_grid_lower_riemann():
    for h, expected in [(0.25, 0.375), (0.1, 0.45)]:
        grid = scalar_op([(v, v) for v in np.arange(0.0, 1.0 + h / 2, h)])
        base = 0  # the pair (0, 0)
        got = antiderivative(grid, base, (1.0,))
        assert got.value == pytest.approx(expected, abs=1e-12)
        # brute-force chain certificate at the coarse step
        if h == 0.25:
            q = ((1.0,), (0.0,))
            assert got.value == pytest.approx(brute_phi_inf(grid, q) - 0.0, abs=1e-12)


def test_antiderivative_zero_at_base_exactly():
    rng = np.random.default_rng(16)
    for _ in range(20):
        T = random_cyclically_monotone(rng, int(rng.integers(2, 8)), dim=int(rng.integers(1, 3)))
        i = int(rng.integers(T.m))
        assert antiderivative(T, i, T.xs[i]).value == 0.0


def test_antiderivative_subgradient_inequality():
    rng = np.random.default_rng(17)
    for _ in range(10):
        T = random_cyclically_monotone(rng, int(rng.integers(2, 7)))
        base = int(rng.integers(T.m))
        for _ in range(5):
            x = rng.uniform(-2, 2, size=1)
            rx = antiderivative(T, base, x).value
            for j in range(T.m):
                rj = antiderivative(T, base, T.xs[j]).value
                assert rx >= rj + T.space.pair(x - T.xs[j], T.ys[j]) - 1e-12


def test_antiderivative_base_pair_independence():
    rng = np.random.default_rng(18)
    for _ in range(10):
        T = random_multivalued_monotone(rng, 8)
        groups = {}
        for i in range(T.m):
            groups.setdefault(T.xs[i].tobytes(), []).append(i)
        multi = [g for g in groups.values() if len(g) > 1]
        if not multi:
            continue
        i, j = multi[0][0], multi[0][1]
        for _ in range(5):
            x = rng.uniform(-2, 2, size=1)
            a = antiderivative(T, i, x).value
            b = antiderivative(T, j, x).value
            assert a == pytest.approx(b, abs=1e-12)


def test_antiderivative_infinite_for_non_cyclically_monotone():
    S = rotation_sample(math.pi / 2, count=8)
    assert antiderivative(S, 0, (1.0, 0.0)).is_pos_inf


def test_antiderivative_bad_index():
    T = scalar_op([(0.0, 0.0)])
    with pytest.raises(InputError):
        antiderivative(T, 3, (0.0,))


# -- product operator ---------------------------------------------------------------


def test_build_kt_single_pair_diagonal():
    T = scalar_op([(2.0, 3.0)])
    K = build_kt(T)
    assert K.m == 1
    np.testing.assert_array_equal(K.xs[0], [2.0, 3.0])
    np.testing.assert_array_equal(K.ys[0], [2.0, 3.0])


def test_build_kt_size_and_membership():
    rng = np.random.default_rng(19)
    T = random_operator(rng, 4, 2)
    K = build_kt(T)
    assert K.m == 16
    # every product point is a cross pairing of graph points
    for t in range(K.m):
        x, y = K.xs[t][:2], K.xs[t][2:]
        u, v = K.ys[t][:2], K.ys[t][2:]
        assert T.contains(x, v) and T.contains(u, y)


def test_build_kt_factorization_and_equivalence():
    rng = np.random.default_rng(20)
    for _ in range(10):
        T = random_operator(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
        K = build_kt(T)
        d = T.space.d1
        for n in (1, 3, 5):
            x, v = rng.uniform(-1, 1, d), rng.uniform(-1, 1, d)
            u, y = rng.uniform(-1, 1, d), rng.uniform(-1, 1, d)
            lhs = phi_n(K, n, (np.concatenate([x, y]), np.concatenate([u, v]))).value.value
            rhs = phi_n(T, n, (x, v)).value.value + phi_n(T, n, (u, y)).value.value
            assert lhs == pytest.approx(rhs, abs=1e-9)
        for n in (2, 3, 4, 5):
            assert is_n_monotone(T, n) == is_n_monotone(K, n)


# -- argchain certificates ------------------------------------------------------------


def test_argchains_reproduce_values():
    rng = np.random.default_rng(21)
    for _ in range(15):
        T = random_operator(rng, int(rng.integers(2, 6)), 2)
        i = int(rng.integers(T.m))
        for q in [random_query(rng, T.space), (T.xs[i], T.ys[i])]:
            for n in (1, 2, 4):
                cv = phi_n(T, n, q)
                assert phi_chain_sum(T, q, cv.argchain) == pytest.approx(
                    cv.value.value, abs=1e-9
                )
                assert len(cv.argchain) <= n
                cc = chi_n(T, n, q)
                if cc.value.is_finite:
                    assert chi_chain_sum(T, q, cc.argchain) == pytest.approx(
                        cc.value.value, abs=1e-9
                    )
        Tm = random_cyclically_monotone(rng, 5)
        q = random_query(rng, Tm.space)
        cv = phi_n(Tm, INF, q)
        assert phi_chain_sum(Tm, q, cv.argchain) == pytest.approx(cv.value.value, abs=1e-9)
        cc = chi_n(Tm, INF, (Tm.xs[0], Tm.ys[-1]))
        if cc.value.is_finite:
            assert chi_chain_sum(Tm, (Tm.xs[0], Tm.ys[-1]), cc.argchain) == pytest.approx(
                cc.value.value, abs=1e-9
            )


# -- input validation ----------------------------------------------------------------


def test_query_dimension_mismatch():
    T = scalar_op([(0.0, 0.0)])
    with pytest.raises(InputError):
        phi_n(T, 1, ((0.0, 1.0), (0.0,)))
    with pytest.raises(InputError):
        chi_n(T, 2, ((0.0,), (0.0, 1.0)))


def test_bad_order_rejected():
    T = scalar_op([(0.0, 0.0)])
    for bad in (0, -1, 2.5, "x", -math.inf):
        with pytest.raises(InputError):
            phi_n(T, bad, ((0.0,), (0.0,)))
    with pytest.raises(InputError):
        is_n_related(T, 1, ((0.0,), (0.0,)))
