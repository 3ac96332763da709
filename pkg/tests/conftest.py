import numpy as np
import pytest

import tsphnn as T


@pytest.fixture(scope="session")
def paper8():
    return T.get_builtin("paper8")


@pytest.fixture(scope="session")
def cityset1():
    return T.get_builtin("cityset1")


@pytest.fixture(scope="session")
def matrix4():
    return T.get_builtin("matrix4")


@pytest.fixture(scope="session")
def paper8_m(paper8):
    return T.distance_matrix(paper8)


@pytest.fixture(scope="session")
def cityset1_m(cityset1):
    return T.distance_matrix(cityset1)


@pytest.fixture(scope="session")
def matrix4_m(matrix4):
    return T.distance_matrix(matrix4)


@pytest.fixture()
def rng():
    return np.random.default_rng(0)
