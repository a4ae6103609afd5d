import mpmath
import pytest
from hypothesis import HealthCheck, settings

from lerchkit.mpcore import PrecisionContext

settings.register_profile(
    "lerchkit", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lerchkit")


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


def close(a, b, digits):
    """True if ``a`` and ``b`` agree to ``digits`` significant digits."""
    a, b = mpmath.mpmathify(a), mpmath.mpmathify(b)
    scale = max(abs(b), mpmath.mpf(1e-300))
    return abs(a - b) <= mpmath.mpf(10) ** (-digits) * max(scale, 1)



# Acceptance outcomes, filled in by test_acceptance and printed at the end.
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
