import pytest

from greensphere import green_sphere
from greensphere.config import Config


@pytest.fixture(autouse=True)
def engine_settings():
    """Every test starts at precision 32, k = 3 and text output"""
    Config.precision, Config.k, Config.window, Config.format = 32, 3, 8, 'text'
    yield
    Config.precision, Config.k, Config.window, Config.format = 32, 3, 8, 'text'


@pytest.fixture
def fresh_tables():
    """Drop cached tables, groups and normal forms before and after the test"""
    green_sphere.reset_caches()
    yield
    green_sphere.reset_caches()
