import random

import pytest

from fischlin.sigma import GroupParams, Schnorr, SigmaInstance, SigmaWitness


@pytest.fixture
def toy_group():
    """1019 = 2 * 509 + 1; g = 4 generates the order-509 subgroup."""
    return GroupParams(1019, 509, 4)


@pytest.fixture
def tiny_group():
    """23 = 2 * 11 + 1; g = 2 generates the order-11 subgroup."""
    return GroupParams(23, 11, 2)


@pytest.fixture
def toy_schnorr(toy_group):
    return Schnorr(toy_group)


@pytest.fixture
def toy_instance(toy_group):
    """Statement x = 4^7 = 80 with planted witness 7."""
    return SigmaInstance(toy_group, 80), SigmaWitness(7)


class StubRng:
    """Deterministic stand-in: randrange returns queued values in order."""

    def __init__(self, *values):
        self.values = list(values)

    def randrange(self, *args):
        return self.values.pop(0)


@pytest.fixture
def stub_rng():
    return StubRng


def seeded(n: int) -> random.Random:
    return random.Random(n)
