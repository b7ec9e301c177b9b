import os
import sys

import pytest
from hypothesis import HealthCheck, Verbosity, settings

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core import console  # noqa: E402
from src.core.scalar import Field  # noqa: E402
from src.quantum.rmatrix import standard_r  # noqa: E402

settings.register_profile('fast', max_examples=25, deadline=None)
settings.register_profile('ci', max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('debugger', max_examples=10, verbosity=Verbosity.verbose, deadline=None)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'fast'))

SAMPLES = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'samples'))


def sample(name: str) -> str:
    return os.path.join(SAMPLES, name)


@pytest.fixture(autouse=True)
def _quiet_console():
    console.configure(quiet=True, progress=False)
    yield
    console.configure(quiet=False, progress=True)


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    for key in ('BRAIDKIT_COEFF', 'BRAIDKIT_DEGREE', 'BRAIDKIT_MAX_RULES', 'BRAIDKIT_PROGRESS'):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv('BRAIDKIT_OUTPUT_DIR', str(tmp_path / 'data'))


@pytest.fixture(scope='session')
def qfield():
    return Field('qfield')


@pytest.fixture(scope='session')
def cyc2():
    return Field('cyclotomic:2')


@pytest.fixture(scope='session')
def cyc3():
    return Field('cyclotomic:3')


@pytest.fixture(scope='session')
def glq2(qfield):
    return standard_r('glq', 2, qfield)
