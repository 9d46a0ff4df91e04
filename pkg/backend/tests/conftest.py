"""
Fixtures comunes de la suite de tests
"""
import pytest

from backend.analytics import compute_metrics
from backend.cli import preset_scenario
from backend.config import Settings, set_settings
from backend.plant import TorpedoPlant
from backend.simulation import run_closed_loop


@pytest.fixture(autouse=True)
def default_settings():
    """Cada test parte de la configuración de config.json"""
    settings = Settings()
    set_settings(settings)
    yield settings
    set_settings(None)


@pytest.fixture
def plant():
    return TorpedoPlant.torpedo()


@pytest.fixture
def short_scenario():
    """Fábrica de escenarios de preset con horizonte corto"""

    def make(name: str, duration: float = 1.0, **overrides):
        return preset_scenario(name, dict(overrides, duration=duration))

    return make


@pytest.fixture(scope="session")
def preset_runs():
    """Trazas completas (60 s) de los tres presets, calculadas una sola vez"""
    set_settings(Settings())
    runs = {}
    for name in ("smc1", "smc2", "pid-smc1"):
        trace = run_closed_loop(preset_scenario(name))
        runs[name] = (trace, compute_metrics(trace))
    set_settings(None)
    return runs
