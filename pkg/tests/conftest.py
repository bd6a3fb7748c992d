import functools
import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from orekit.scalars import Poly, RatFn  # noqa: E402
from orekit.scenario import load_scenario  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCENARIOS = os.path.join(ROOT, "scenarios")

settings.register_profile("orekit", max_examples=40, deadline=None)
settings.load_profile("orekit")


def scenario_path(name):
    return os.path.join(SCENARIOS, f"{name}.json")


@functools.lru_cache(maxsize=None)
def scenario(name):
    return load_scenario(scenario_path(name))


def dense(poly):
    if not poly:
        return ()
    out = [0] * (poly.degree() + 1)
    for e, v in poly.terms.items():
        out[e] = int(v)
    return tuple(out)


def to_pair(f):
    """RatFn -> (num, den) dense tuples as used by the oracles."""
    return (dense(f.num), dense(f.den))


def from_pair(K, pair):
    num, den = pair
    return RatFn(Poly.from_dense(list(num), K.p), Poly.from_dense(list(den), K.p), K)


@pytest.fixture
def sc():
    return scenario
