import math

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from su11.spaces import GElement, QStarPoint

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)


@st.composite
def matrices(draw):
    return np.array([[draw(cplx), draw(cplx)], [draw(cplx), draw(cplx)]])


@st.composite
def admissible_qstar(draw, lam=(0.1, 2.0), s=(0.0, 1.5)):
    lam = draw(st.floats(*lam))
    phi = draw(st.floats(0, 2 * math.pi, exclude_max=True))
    s = draw(st.floats(*s))
    r = lam * math.sinh(s)
    return QStarPoint(r * math.cos(phi), r * math.sin(phi), lam * math.cosh(s))


@st.composite
def group_elements(draw, boost=2.0):
    r = draw(st.floats(0, boost))
    a = draw(st.floats(0, 2 * math.pi))
    b = draw(st.floats(0, 2 * math.pi))
    return GElement.from_angles(r, a, b)


@st.composite
def admissible_an(draw):
    from su11.maps import dress

    z = draw(st.floats(0.05, 2.0))
    return dress(z, draw(group_elements(boost=1.0))).b_prime


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_matrix(rng, scale=2.0):
    return scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
