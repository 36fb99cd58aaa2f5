import random
from fractions import Fraction
from pathlib import Path

import pytest

from softcsp import CostPair, INF, lookup
from softcsp.constraints import make_constraint
from softcsp.journey import load_appointments, load_stations
from softcsp.roadnet import load_network

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SEMIRING_KEYS = ("csp", "fcsp", "wcsp", "costpair")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def network():
    return load_network(FIXTURES / "network.json")


@pytest.fixture
def appointments():
    return load_appointments(FIXTURES / "appointments.json")


@pytest.fixture
def stations():
    return load_stations(FIXTURES / "stations.json")


# --- random data shared by property loops -----------------------------------

def random_payload(rng: random.Random, key: str):
    if key == "csp":
        return rng.random() < 0.5
    if key == "fcsp":
        return Fraction(rng.randint(0, 6), 6)
    if key == "wcsp":
        return INF if rng.random() < 0.15 else rng.randint(0, 9)
    if key == "costpair":
        def component():
            return INF if rng.random() < 0.1 else rng.randint(0, 6)
        return CostPair(component(), component())
    raise AssertionError(key)


def random_value(rng: random.Random, spec):
    return spec.value(random_payload(rng, spec.key))


def random_constraint(rng: random.Random, spec, domain, names, max_support=2):
    size = rng.randint(0, min(max_support, len(names)))
    chosen = rng.sample(list(names), size)
    import itertools
    table = {key: random_value(rng, spec)
             for key in itertools.product(domain, repeat=size)}
    return make_constraint(spec, domain, chosen, table)


def specs():
    return [lookup(key) for key in SEMIRING_KEYS]
