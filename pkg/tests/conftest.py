import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from martnuc.lattice import DEFAULT, LatticeParams, check_assumptions

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Filled by tests/test_acceptance.py, printed after the run.
CRITERIA: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, ok = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def params():
    return DEFAULT


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def nearby_params(draw_a, draw_b, draw_g) -> LatticeParams | None:
    """Parameters near the preset; ``None`` when the assumptions fail."""
    p = LatticeParams(1.06372 + draw_a, 0.91542 + draw_b, 1.02368 + draw_g)
    return p if check_assumptions(p).all_hold else None
