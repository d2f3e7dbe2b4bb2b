"""Shared fixtures."""
import pytest

from cge.config import get_settings
from cge.schemas import (
    Drude,
    GrapheneSheet,
    IdealConductor,
    OscillatorSet,
    PlateStack,
    QuadratureConfig,
    Scenario,
)
from cge.services.material_files import load_material
from cge.utils.cache import clear_cache


@pytest.fixture(autouse=True)
def fresh_state(monkeypatch):
    """Every test starts with empty caches and no user material path."""
    monkeypatch.delenv("CGE_MATERIAL_PATH", raising=False)
    get_settings.cache_clear()
    clear_cache("*")
    yield
    get_settings.cache_clear()
    clear_cache("*")


@pytest.fixture
def cfg():
    return QuadratureConfig()


@pytest.fixture
def loose_cfg():
    """Looser tolerance for tests that only check orderings."""
    return QuadratureConfig(rel_tol=1e-5)


@pytest.fixture
def silica():
    return load_material("fused-silica")


@pytest.fixture
def gold():
    return load_material("gold")


@pytest.fixture
def gold_drude():
    return Drude(omega_p=9.0, gamma=0.035, name="gold-drude")


@pytest.fixture
def ideal():
    return IdealConductor(name="ideal")


@pytest.fixture
def constant_dielectric():
    return OscillatorSet(eps_infinity=4.0, name="eps4")


@pytest.fixture
def sheet():
    return GrapheneSheet()


@pytest.fixture
def make_scenario():
    """Scenario factory; side2 defaults to side1."""
    def build(a, temperature, side1, side2=None):
        return Scenario(separation=a, temperature=temperature, side1=side1, side2=side2 or side1)
    return build


@pytest.fixture
def ideal_scenario(ideal, make_scenario):
    def build(a, temperature=300.0):
        return make_scenario(a, temperature, PlateStack(substrate=ideal))
    return build
