import math
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))  # makes `import naive` work

from linelab import DEFAULT_MARGINS, Line, Scene  # noqa: E402

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

S2 = math.sqrt(0.5)


@pytest.fixture
def square_lines():
    """x = 0, x = 4, y = 0, y = 4."""
    return [
        Line(0, 1, 0, 0),
        Line(1, 1, 0, 4),
        Line(2, 0, 1, 0),
        Line(3, 0, 1, 4),
    ]


@pytest.fixture
def right_triangle_lines():
    """x = 0, y = 0, x + y = 1."""
    return [
        Line(0, 1, 0, 0),
        Line(1, 0, 1, 0),
        Line(2, S2, S2, S2),
    ]


@pytest.fixture
def empty_scene():
    return Scene((), (), DEFAULT_MARGINS)
