from fractions import Fraction

import pytest

from toricfloer.scalars import QQ, NovikovField, PrimeField
from toricfloer.toric import ToricData


@pytest.fixture(scope="session")
def cp1():
    return ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(1)))


@pytest.fixture(scope="session")
def cp1_areas_12():
    return ToricData(1, ((1,), (-1,)), (Fraction(1), Fraction(2)))


@pytest.fixture(scope="session")
def cp2():
    return ToricData(2, ((1, 0), (0, 1), (-1, -1)), (Fraction(1),) * 3)


@pytest.fixture(scope="session")
def cp1xcp1():
    return ToricData(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), (Fraction(1),) * 4)


@pytest.fixture(scope="session")
def f5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def f2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def f7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def novikov_q5():
    return NovikovField(QQ, Fraction(5))
