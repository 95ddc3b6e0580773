import random

import pytest

from toricpos import Fan, ToricDivisor


@pytest.fixture(scope="session")
def p1():
    return Fan(1, ((1,), (-1,)), ((0,), (1,)), name="p1")


@pytest.fixture(scope="session")
def p2():
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)), name="p2")


@pytest.fixture(scope="session")
def p1xp1():
    return Fan(
        2,
        ((1, 0), (0, 1), (-1, 0), (0, -1)),
        ((0, 1), (1, 2), (2, 3), (0, 3)),
        name="p1xp1",
    )


@pytest.fixture(scope="session")
def totaro():
    return Fan(
        3,
        ((0, 0, -1), (0, 0, 1), (1, 0, 1), (0, 1, -1), (-1, 0, 0), (0, -1, 0)),
        ((0, 2, 3), (0, 2, 5), (0, 3, 4), (0, 4, 5),
         (1, 2, 3), (1, 2, 5), (1, 3, 4), (1, 4, 5)),
        name="totaro-x",
    )


@pytest.fixture(scope="session")
def example_fans(p1, p2, p1xp1, totaro):
    return (p1, p2, p1xp1, totaro)


@pytest.fixture(scope="session")
def totaro_L(totaro):
    return ToricDivisor(totaro, (3, 3, -1, -1, -1, -1))


@pytest.fixture(scope="session")
def totaro_H(totaro):
    return ToricDivisor(totaro, (1, 1, 1, 1, 1, 1))


def random_divisors(fan, count, lo=-5, hi=5, seed=0):
    rng = random.Random(f"{fan.name}:{seed}")
    return [
        ToricDivisor(fan, tuple(rng.randint(lo, hi) for _ in range(fan.n_rays)))
        for _ in range(count)
    ]
