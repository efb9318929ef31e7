"""Shared fixtures for the char1 test suite."""

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

import config  # noqa: E402
from core.elliptic_count import CurveModel, curve_11a  # noqa: E402
from core.monoid_spec import FinAbGroup, PointedMonoid, SchemeData  # noqa: E402


def _corpus():
    monoids = [PointedMonoid.f1n(n) for n in range(1, 8)]
    monoids += [PointedMonoid.truncated(k) for k in range(1, 6)]
    monoids += [PointedMonoid.idempotent_tail(k) for k in range(2, 6)]
    monoids.append(PointedMonoid.smash(PointedMonoid.truncated(2), PointedMonoid.truncated(3)))
    monoids.append(PointedMonoid.smash(PointedMonoid.f1n(2), PointedMonoid.truncated(2)))
    monoids.append(PointedMonoid.smash(PointedMonoid.f1n(2), PointedMonoid.idempotent_tail(2)))
    return [M for M in monoids if M.size <= 8]


@pytest.fixture(scope="session")
def monoid_corpus():
    """Pointed monoids of size <= 8 built from the standard constructors."""
    return _corpus()


@pytest.fixture(scope="session")
def curve11a() -> CurveModel:
    return curve_11a()


@pytest.fixture(scope="session")
def nonsplit_curve() -> CurveModel:
    """y^2 = x^3 - x^2 + 7: non-split multiplicative at 7, discriminant -20720."""
    return CurveModel(0, -1, 0, 0, 7, label="nonsplit7")


@pytest.fixture(scope="session")
def p1_scheme() -> SchemeData:
    trivial = FinAbGroup()
    return SchemeData(((1, trivial), (0, trivial), (0, trivial)))


@pytest.fixture(scope="session")
def w5_fixture_path() -> str:
    return config.W5_TABLE_FIXTURE


@pytest.fixture(scope="session")
def data_dir() -> str:
    return config.DATA_DIR
