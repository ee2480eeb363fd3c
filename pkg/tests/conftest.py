from pathlib import Path
import random

import pytest

from mixwitt.core.numberfield import NumberField, make_field, real_orderings
from mixwitt.core.quat import QuaternionAlgebra

TEST_ROOT = Path(__file__).parent
DATA_DIR = TEST_ROOT / "data"

@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR

@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261019)

@pytest.fixture(scope="session")
def QQ() -> NumberField:
    return make_field("t")

@pytest.fixture(scope="session")
def sqrt2() -> NumberField:
    return make_field("t^2-2")

@pytest.fixture(scope="session")
def cbrt2() -> NumberField:
    return make_field("t^3-2")

@pytest.fixture(scope="session")
def gaussian() -> NumberField:
    return make_field("t^2+1")

@pytest.fixture(scope="session")
def real_place(QQ):
    (P,) = real_orderings(QQ)
    return P

@pytest.fixture(scope="session")
def sqrt2_orderings(sqrt2):
    """(negative root, positive root)"""
    return real_orderings(sqrt2)

@pytest.fixture(scope="session")
def hamilton(QQ) -> QuaternionAlgebra:
    return QuaternionAlgebra.of(QQ, -1, -1)

@pytest.fixture(scope="session")
def split13(QQ) -> QuaternionAlgebra:
    """(-1, 3), split at the real place."""
    return QuaternionAlgebra.of(QQ, -1, 3)

@pytest.fixture(scope="session")
def matrix(QQ) -> QuaternionAlgebra:
    """(1, 1), split everywhere."""
    return QuaternionAlgebra.of(QQ, 1, 1)

@pytest.fixture(scope="session")
def theta_algebra(sqrt2) -> QuaternionAlgebra:
    """(-1, theta) over Q(sqrt 2): nonsplit at the negative root, split at the positive one."""
    return QuaternionAlgebra.of(sqrt2, -1, sqrt2.gen)

RATIONAL_SYMBOLS = [(-1, -1), (-1, 3), (2, 5), (-1, -3)]

@pytest.fixture(params=RATIONAL_SYMBOLS, ids=[f"({a},{b})" for a, b in RATIONAL_SYMBOLS])
def rational_algebra(request, QQ) -> QuaternionAlgebra:
    a, b = request.param
    return QuaternionAlgebra.of(QQ, a, b)

@pytest.fixture(params=["hamilton", "split13", "matrix", "theta_algebra", "(2,5)"])
def test_algebra(request, QQ) -> QuaternionAlgebra:
    if request.param == "(2,5)":
        return QuaternionAlgebra.of(QQ, 2, 5)
    return request.getfixturevalue(request.param)
