import numpy as np
import pytest

from deakit import MalmquistSeries, Trapezoid, deadata_from_arrays, fuzzy_from_arrays

META_X = [2, 3, 5, 4.64, 6.4, 11, 9.4, 8.4, 5.4, 4, 5.44, 5.7, 8.26, 6.76, 9, 10, 12, 10.76,
          12.98, 13.56, 10.4, 11.64, 10.68]
META_Y = [1, 3, 4, 0.69, 2.41, 2, 3.37, 1.41, 9.81, 8.29, 6.57, 8.69, 8.63, 7.63, 9, 11, 12,
          9.73, 9.27, 6.83, 7.25, 4.27, 2.5]
META_NAMES = [chr(ord("A") + k) for k in range(23)]
META_GROUPS = {"G1": list(range(0, 8)), "G2": list(range(8, 14)), "G3": list(range(14, 23))}
META_CONCAVE = [1, 0.84957, 0.56461, 0.43103, 0.37294, 0.20676, 0.28194, 0.25149, 1, 1, 0.64855,
                0.76639, 0.52217, 0.56493, 0.51711, 0.89863, 1, 0.49501, 0.37771, 0.26545,
                0.35718, 0.24889, 0.22580]
META_NONCONCAVE = [1, 1, 0.80000, 0.43103, 0.42266, 0.22727, 0.39787, 0.26250, 1, 1, 0.73529,
                   0.76639, 0.52217, 0.59172, 0.51711, 1, 1, 0.49501, 0.37771, 0.29499, 0.38462,
                   0.34364, 0.25749]

N_CORPUS = 100


def make_m1():
    return deadata_from_arrays([[2, 4, 5, 8]], [[2, 2, 4, 2]], list("ABCD"))


def make_meta():
    return deadata_from_arrays([META_X], [META_Y], META_NAMES)


def make_m2():
    p1 = deadata_from_arrays([[2, 4]], [[2, 2]], ["A", "B"])
    p2 = deadata_from_arrays([[2, 4]], [[2.5, 3]], ["A", "B"])
    return MalmquistSeries((p1, p2))


def make_m3():
    m = np.array([[2.0, 4.0]])
    xin = Trapezoid(mL=m, mR=m.copy(), dL=np.ones((1, 2)), dR=np.ones((1, 2)))
    return fuzzy_from_arrays(xin, Trapezoid.crisp([[2, 2]]), ["A", "B"])


def random_instance(seed: int, n_max: int = 12, dim_max: int = 3):
    """Strictly positive instance with n <= n_max and m, s <= dim_max."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, n_max + 1))
    m = int(rng.integers(1, dim_max + 1))
    s = int(rng.integers(1, dim_max + 1))
    X = rng.uniform(1, 10, size=(m, n)).round(3)
    Y = rng.uniform(1, 10, size=(s, n)).round(3)
    return deadata_from_arrays(X, Y)


def random_panel(seed: int, periods: int = 3, n: int = 6, m: int = 2, s: int = 2):
    """Positive Malmquist panel with drifting data."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(1, 10, size=(m, n))
    Y = rng.uniform(1, 10, size=(s, n))
    out = []
    for _ in range(periods):
        out.append(deadata_from_arrays(X.round(3), Y.round(3)))
        X = X * rng.uniform(0.8, 1.2, size=X.shape)
        Y = Y * rng.uniform(0.8, 1.3, size=Y.shape)
    return MalmquistSeries(tuple(out))


CORPUS = [random_instance(1000 + k) for k in range(N_CORPUS)]


@pytest.fixture
def m1():
    return make_m1()


@pytest.fixture
def meta():
    return make_meta()


@pytest.fixture
def m2():
    return make_m2()


@pytest.fixture
def m3():
    return make_m3()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
