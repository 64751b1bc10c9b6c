"""Shared fixtures: curves, tau models, derived databases (session-scoped)."""

import pytest

from kleinian.curves import CYCLIC_TRIGONAL_34, HYPERELLIPTIC_G2, curve_by_family
from kleinian.engine import RelationDB, derive_range
from kleinian.taucalc import TauModel


@pytest.fixture(scope="session")
def g2():
    return curve_by_family(HYPERELLIPTIC_G2)


@pytest.fixture(scope="session")
def trig():
    return curve_by_family(CYCLIC_TRIGONAL_34)


@pytest.fixture(scope="session")
def g2_model(g2):
    return TauModel.build(g2, 10)


@pytest.fixture(scope="session")
def trig_model(trig):
    return TauModel.build(trig, 6)


@pytest.fixture(scope="session")
def g2_db(g2, g2_model):
    return derive_range(RelationDB(g2), g2_model, 10)


@pytest.fixture(scope="session")
def trig_db(trig, trig_model):
    return derive_range(RelationDB(trig), trig_model, 6)
