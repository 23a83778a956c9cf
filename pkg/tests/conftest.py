import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Computed areas of the published placements (Table-4 style column).
PUBLISHED_AREA = {6: 0.1249999, 7: 0.0838584, 8: 0.0723758, 9: 0.0548756, 10: 0.0465369}
H5_STAR = 0.19245  # sqrt(3)/9 rounded to 7 decimals


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
