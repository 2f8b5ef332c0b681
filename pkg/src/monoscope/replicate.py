"""Built-in replication cases: every desk-checkable numeric claim, re-derived.

Each case returns a list of Check records; the CLI renders them as a
pass/fail table and exits non-zero when any check fails.  Randomized cases
take a seed and are fully deterministic given it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chains import (
    DEFAULT_TOL,
    build_kt,
    chi_n,
    is_n_monotone,
    is_n_related,
    monotonicity_order,
    phi_n,
    satisfies_cn,
)
from .extreal import format_real
from .operators import FiniteOperator
from .oracles import (
    IdentityOracle,
    NormalConeOracle,
    RotationOracle,
    SampleSpec,
    SkewLinearOracle,
    oracle_chi,
    oracle_order,
    oracle_phi,
    sample_graph,
)
from .randomops import random_monotone_scalar, random_operator, rng_from
from .spaces import PairingSpace


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    computed: str
    expected: str


def _check(name: str, passed: bool, computed, expected) -> Check:
    return Check(name, bool(passed), str(computed), str(expected))


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


SCALAR = PairingSpace(1, 1)


def _scalar_op(pairs) -> FiniteOperator:
    return FiniteOperator(SCALAR, [((x,), (y,)) for x, y in pairs])


# -- cases ----------------------------------------------------------------------


def case_remark13(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    T = _scalar_op([(0.0, 0.0), (5.0, 5.0)])
    checks = [
        _check(
            "(1, 1) infinitely related to {(0,0),(5,5)}",
            is_n_related(T, math.inf, ((1.0,), (1.0,)), tol=tol),
            is_n_related(T, math.inf, ((1.0,), (1.0,)), tol=tol),
            True,
        ),
        _check(
            "(2, 0.32) infinitely related to {(0,0),(5,5)}",
            is_n_related(T, math.inf, ((2.0,), (0.32,)), tol=tol),
            is_n_related(T, math.inf, ((2.0,), (0.32,)), tol=tol),
            True,
        ),
    ]
    T4 = _scalar_op([(0.0, 0.0), (5.0, 5.0), (1.0, 1.0), (2.0, 0.32)])
    q = ((0.0,), (0.0,))
    margin = 0.0 - phi_n(T4, 2, q).value.value  # c(q) - phi_2(q)
    checks.append(
        _check(
            "3-relatedness margin of (0, 0) equals -0.36",
            _close(margin, -0.36, 1e-12),
            format_real(margin),
            "-0.36 (within 1e-12)",
        )
    )
    checks.append(
        _check(
            "(0, 0) not 3-related to the extended sample",
            not is_n_related(T4, 3, q, tol=tol),
            not is_n_related(T4, 3, q, tol=tol),
            True,
        )
    )
    return checks


def case_example30(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    T = _scalar_op([(k / 10.0, 0.0) for k in range(21)])
    q = ((-1.0,), (-1.0,))
    v = phi_n(T, math.inf, q).value.value
    c = 1.0
    return [
        _check("phi_inf(-1, -1) on the half-line sample", v == 0.0, format_real(v), "0"),
        _check(
            "phi_inf(-1, -1) < c(-1, -1): maximality necessary condition fails",
            v < c - tol,
            f"{format_real(v)} < {format_real(c)}",
            True,
        ),
        _check(
            "chain condition fails at (-1, -1)",
            not satisfies_cn(T, math.inf, q, tol=tol),
            not satisfies_cn(T, math.inf, q, tol=tol),
            True,
        ),
    ]


def case_example38(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    rng = rng_from(seed)
    total = 500
    good = 0
    for _ in range(total):
        T = random_monotone_scalar(rng, int(rng.integers(2, 13)))
        if monotonicity_order(T, tol=tol).order == math.inf:
            good += 1
    return [
        _check(
            "500 random monotone subsets of R x R are cyclically monotone",
            good == total,
            f"{good}/{total}",
            f"{total}/{total}",
        )
    ]


def case_example40(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    checks = []
    fixtures = [
        ("interval [0,1]", NormalConeOracle([[0.0], [1.0]]), [np.array([1.0]), np.array([-2.0]), np.array([0.7])]),
        (
            "box [0,1]x[-1,2]",
            NormalConeOracle([[0.0, -1.0], [1.0, -1.0], [0.0, 2.0], [1.0, 2.0]]),
            [np.array([1.0, 0.5]), np.array([-2.0, 1.0]), np.array([0.3, -0.7])],
        ),
    ]
    for label, o, ys in fixtures:
        S = sample_graph(o, SampleSpec(magnitudes=(1.0, 2.5)))
        verts = o.vertices
        worst = max(
            float(np.max(verts @ S.ys[i]) - S.xs[i] @ S.ys[i]) for i in range(S.m)
        )
        checks.append(
            _check(
                f"{label}: sampled pairs satisfy the normal-cone inequality",
                worst <= 1e-9,
                format_real(worst),
                "<= 1e-9",
            )
        )
        checks.append(
            _check(
                f"{label}: sample is cyclically monotone",
                monotonicity_order(S, tol=tol).order == math.inf,
                str(monotonicity_order(S, tol=tol).order),
                "inf",
            )
        )
        xs_in = [verts[0], verts[-1], verts.mean(axis=0)]
        worst_phi = 0.0
        for x in xs_in:
            for y in ys:
                for n in (1, 2, math.inf):
                    ov = oracle_phi(o, n, (x, y)).value
                    sv = phi_n(S, n, (x, y)).value.value
                    worst_phi = max(worst_phi, abs(ov - sv))
        checks.append(
            _check(
                f"{label}: sampled phi matches ind_C(x) + sigma_C(y) on C",
                worst_phi <= 1e-9,
                format_real(worst_phi),
                "<= 1e-9",
            )
        )
        x_out = verts.max(axis=0) + 1.0
        checks.append(
            _check(
                f"{label}: phi is +inf off the hull",
                oracle_phi(o, 2, (x_out, ys[0])).is_pos_inf,
                str(oracle_phi(o, 2, (x_out, ys[0]))),
                "inf",
            )
        )
        worst_chi = 0.0
        for i in range(S.m):
            q = (S.xs[i], S.ys[i])
            ov = oracle_chi(o, 2, q).value
            sv = chi_n(S, 2, q).value.value
            worst_chi = max(worst_chi, abs(ov - sv))
        checks.append(
            _check(
                f"{label}: sampled chi_2 matches the closed form on the sample",
                worst_chi <= 1e-9,
                format_real(worst_chi),
                "<= 1e-9",
            )
        )
    return checks


# Fixed verification queries: |x - y| <= 0.12 keeps the first-order grid
# truncation (h/2)|x - y| of the order-infinity value below the 1e-3 gate.
IDENTITY_QUERIES = [(-0.9, -0.8), (0.3, 0.42), (1.0, 0.9), (0.0, 0.1), (-1.0, -1.1),
                    (0.8, 0.75), (-0.5, -0.38), (0.6, 0.52), (0.25, 0.3), (-0.75, -0.87),
                    (0.1, 0.0), (1.1, 1.2), (-1.2, -1.14), (0.45, 0.45), (-0.15, -0.05),
                    (0.33, 0.3), (0.9, 1.02), (-0.4, -0.52), (0.05, 0.05), (0.7, 0.62)]


def case_example42(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    o1 = IdentityOracle(1)
    checks = [
        _check(
            "phi_1(1, 0) = 1/4",
            oracle_phi(o1, 1, ((1.0,), (0.0,))).value == 0.25,
            format_real(oracle_phi(o1, 1, ((1.0,), (0.0,))).value),
            "0.25",
        ),
        _check(
            "phi_3(1, 0) = 3/8",
            oracle_phi(o1, 3, ((1.0,), (0.0,))).value == 0.375,
            format_real(oracle_phi(o1, 3, ((1.0,), (0.0,))).value),
            "0.375",
        ),
        _check(
            "phi_inf((1,0),(0,1)) = 1 in dimension 2",
            oracle_phi(IdentityOracle(2), math.inf, ((1.0, 0.0), (0.0, 1.0))).value == 1.0,
            format_real(oracle_phi(IdentityOracle(2), math.inf, ((1.0, 0.0), (0.0, 1.0))).value),
            "1",
        ),
    ]
    S = sample_graph(o1, SampleSpec(grid_count=401, lo=-2.0, hi=2.0))
    worst = 0.0
    for n in (1, 2, 3, math.inf):
        for x, y in IDENTITY_QUERIES:
            ov = oracle_phi(o1, n, ((x,), (y,))).value
            sv = phi_n(S, n, ((x,), (y,))).value.value
            worst = max(worst, abs(ov - sv))
    checks.append(
        _check(
            "grid-sampled phi_n within 1e-3 of the closed form (n in {1,2,3,inf})",
            worst <= 1e-3,
            format_real(worst),
            "<= 1e-3",
        )
    )
    small = sample_graph(o1, SampleSpec(grid_count=5, lo=-1.0, hi=1.0))
    worst_chi = 0.0
    for x in (-1.0, 0.0, 1.0):
        for y in (-0.5, 0.5, 1.0):
            sv = chi_n(small, 2, ((x,), (y,))).value.value
            worst_chi = max(worst_chi, abs(sv - (x * x + y * y - x * y)))
    checks.append(
        _check(
            "chi_2 on grid points equals ||x||^2 + ||y||^2 - x.y",
            worst_chi <= 1e-12,
            format_real(worst_chi),
            "<= 1e-12",
        )
    )
    coarse = sample_graph(o1, SampleSpec(grid_count=51, lo=-2.0, hi=2.0))
    fine = sample_graph(o1, SampleSpec(grid_count=101, lo=-2.0, hi=2.0))
    mono_ok = True
    for n in (1, 2, math.inf):
        for x, y in IDENTITY_QUERIES:
            vc = phi_n(coarse, n, ((x,), (y,))).value.value
            vf = phi_n(fine, n, ((x,), (y,))).value.value
            ov = oracle_phi(o1, n, ((x,), (y,))).value
            if vf < vc - 1e-9 or (ov - vf) > (ov - vc) + 1e-9:
                mono_ok = False
    checks.append(
        _check(
            "2x refinement never lowers phi and shrinks the closed-form gap",
            mono_ok,
            mono_ok,
            True,
        )
    )
    return checks


ROTATION_TABLE = [("pi/2", 2), ("pi/3", 3), ("pi/4", 4), ("pi/5", 5), ("pi/6", 6)]


def case_example43(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    checks = []
    orders = []
    for label, expected in ROTATION_TABLE:
        th = math.pi / expected
        o = RotationOracle(th)
        S = sample_graph(o, SampleSpec())
        got = monotonicity_order(S, tol=tol).order
        orders.append((label, got, expected, oracle_order(o)))
    ok = all(g == e and oo == e for _, g, e, oo in orders)
    checks.append(
        _check(
            "36-point samples at pi/2..pi/6 classify to orders 2..6",
            ok,
            "[" + ", ".join(f"{lbl}:{g}" for lbl, g, _, _ in orders) + "]",
            "[pi/2:2, pi/3:3, pi/4:4, pi/5:5, pi/6:6]",
        )
    )
    rng = rng_from(seed)
    lower_ok = True
    for _ in range(20):
        th = rng.uniform(1e-3, math.pi / 2)
        o = RotationOracle(th)
        S = sample_graph(o, SampleSpec())
        if monotonicity_order(S, tol=tol).order < oracle_order(o):
            lower_ok = False
    checks.append(
        _check(
            "sampled order >= floor(pi/theta) for 20 random theta in (0, pi/2]",
            lower_ok,
            lower_ok,
            True,
        )
    )
    o6 = RotationOracle(math.pi / 6)
    q = ((1.0, 0.0), (0.0, 1.0))
    expected = math.cos(math.pi / 6) * float(
        np.sum((np.array([0.0, 1.0]) - o6.matrix @ np.array([1.0, 0.0])) ** 2)
    )
    got = oracle_chi(o6, 2, q).value
    checks.append(
        _check(
            "chi_2 closed form at theta = pi/6",
            got == expected,
            format_real(got),
            format_real(expected),
        )
    )
    S6 = sample_graph(o6, SampleSpec(radii=(0.5, 1.0)))
    sandwich_ok = True
    for i in range(0, S6.m, 7):
        q = (S6.xs[i], S6.ys[(i * 5) % S6.m])
        sv = chi_n(S6, 2, q).value.value
        ov = oracle_chi(o6, 2, q).value
        if sv < ov - 1e-9:
            sandwich_ok = False
    checks.append(
        _check(
            "sampled chi_2 dominates the closed form",
            sandwich_ok,
            sandwich_ok,
            True,
        )
    )
    o34 = RotationOracle(3 * math.pi / 4)
    checks.append(
        _check(
            "chi_3 at theta = 3pi/4 is identically -inf",
            oracle_chi(o34, 3, ((1.0, 0.0), (0.0, 1.0))).is_neg_inf,
            str(oracle_chi(o34, 3, ((1.0, 0.0), (0.0, 1.0)))),
            "-inf",
        )
    )
    o2 = RotationOracle(math.pi / 2)
    gx = np.array([1.0, 0.0])
    gy = o2.matrix @ gx
    on_graph = (gx, gy)
    off_graph = ((1.0, 0.0), (1.0, 0.0))
    c_on = float(gx @ gy)
    checks.append(
        _check(
            "phi_1 at theta = pi/2 restricts to the graph coupling",
            oracle_phi(o2, 1, on_graph).value == c_on
            and oracle_phi(o2, 1, off_graph).is_pos_inf,
            f"{format_real(oracle_phi(o2, 1, on_graph).value)}, {oracle_phi(o2, 1, off_graph)}",
            f"{format_real(c_on)}, inf",
        )
    )
    return checks


def case_example44(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    checks = []
    A2 = SkewLinearOracle([[0.0, -1.0], [1.0, 0.0]])
    A0 = SkewLinearOracle([[0.0, 0.0], [0.0, 0.0]])
    A4 = SkewLinearOracle(
        [
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
        domain_basis=[[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]],
    )
    fixtures = [
        ("A = [[0,-1],[1,0]] on R^2", A2, 2),
        ("A = 0 on R^2", A0, math.inf),
        ("4x4 skew with range orthogonal to a 2-dim domain", A4, math.inf),
    ]
    for label, o, expected in fixtures:
        got = oracle_order(o)
        S = sample_graph(o, SampleSpec(grid_count=3))
        sampled = monotonicity_order(S, tol=tol).order
        checks.append(_check(f"{label}: rank-test order", got == expected, got, expected))
        checks.append(
            _check(f"{label}: sampled order agrees", sampled == expected, sampled, expected)
        )
        skew_worst = max(abs(float(S.xs[i] @ S.ys[i])) for i in range(S.m))
        checks.append(
            _check(
                f"{label}: sampled pairs have zero coupling",
                skew_worst <= 1e-10,
                format_real(skew_worst),
                "<= 1e-10",
            )
        )
    return checks


def case_kt(seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    checks = []
    single = _scalar_op([(2.0, 3.0)])
    K1 = build_kt(single)
    ok1 = (
        K1.m == 1
        and np.array_equal(K1.xs[0], [2.0, 3.0])
        and np.array_equal(K1.ys[0], [2.0, 3.0])
    )
    checks.append(_check("single pair maps to the diagonal product pair", ok1, ok1, True))
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(50):
        d = int(rng.integers(1, 4))
        m = int(rng.integers(1, 7))
        T = random_operator(rng, m, d)
        K = build_kt(T)
        for _ in range(10):
            n = int(rng.integers(1, 6))
            x, v = rng.uniform(-1.5, 1.5, d), rng.uniform(-1.5, 1.5, d)
            u, y = rng.uniform(-1.5, 1.5, d), rng.uniform(-1.5, 1.5, d)
            lhs = phi_n(K, n, (np.concatenate([x, y]), np.concatenate([u, v]))).value.value
            rhs = phi_n(T, n, (x, v)).value.value + phi_n(T, n, (u, y)).value.value
            worst = max(worst, abs(lhs - rhs))
    checks.append(
        _check(
            "product-operator factorization residual over 50 random operators",
            worst < 1e-9,
            format_real(worst),
            "< 1e-9",
        )
    )
    agree = True
    for _ in range(20):
        T = random_operator(rng, int(rng.integers(2, 6)), int(rng.integers(1, 3)))
        K = build_kt(T)
        for n in range(2, 6):
            if is_n_monotone(T, n, tol=tol) != is_n_monotone(K, n, tol=tol):
                agree = False
    checks.append(
        _check(
            "T and its product operator share every n-monotonicity verdict",
            agree,
            agree,
            True,
        )
    )
    return checks


CASES = {
    "remark13": case_remark13,
    "example30": case_example30,
    "example38": case_example38,
    "example40": case_example40,
    "example42": case_example42,
    "example43": case_example43,
    "example44": case_example44,
    "kt": case_kt,
}


def run_case(name: str, seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    if name not in CASES:
        from .errors import InputError

        raise InputError(f"unknown replication case {name!r}; choose from {sorted(CASES)}")
    return CASES[name](seed=seed, tol=tol)
