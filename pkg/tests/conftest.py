import pytest
from hypothesis import HealthCheck, settings

from algset.fincat import FINSET, PresheafCategory, sierpinski_category
from support import ACCEPTANCE_LINES

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")



def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def finset():
    return FINSET


@pytest.fixture(scope="session")
def arrow_cat():
    """Presheaves on the index category with one arrow u: 0 -> 1."""
    return PresheafCategory(sierpinski_category())
