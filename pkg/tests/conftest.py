import numpy as np
import pytest

import monoscope.kernels as kernels
from monoscope import FiniteOperator, PairingSpace


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile the tropical kernels once so timed tests measure the math.
    kernels.warmup()


@pytest.fixture
def scalar_space():
    return PairingSpace(1, 1)


@pytest.fixture
def plane_space():
    return PairingSpace(2, 2)


def scalar_op(pairs) -> FiniteOperator:
    return FiniteOperator(PairingSpace(1, 1), [((x,), (y,)) for x, y in pairs])


@pytest.fixture
def remark13_pair():
    T2 = scalar_op([(0.0, 0.0), (5.0, 5.0)])
    T4 = scalar_op([(0.0, 0.0), (5.0, 5.0), (1.0, 1.0), (2.0, 0.32)])
    return T2, T4


@pytest.fixture
def identity_grid3():
    return scalar_op([(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)])


def rotation_sample(theta: float, count: int = 36, radii=(1.0,)) -> FiniteOperator:
    c, s = np.cos(theta), np.sin(theta)
    R = np.array([[c, -s], [s, c]])
    pts = []
    for r in radii:
        for t in range(count):
            a = 2 * np.pi * t / count
            x = np.array([r * np.cos(a), r * np.sin(a)])
            pts.append((x, R @ x))
    return FiniteOperator(PairingSpace(2, 2), pts)
