import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from obstruct.arith import Poly, RingCtx

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

P = 10007
QXY = RingCtx(("x", "y"))
FXY = RingCtx(("x", "y"), P)


@pytest.fixture
def rng():
    return random.Random(1234)


def polys(ctx, max_deg=3, max_terms=4, height=6):
    """Hypothesis strategy for small polynomials in ``ctx``."""
    expo = st.tuples(*[st.integers(0, max_deg) for _ in ctx.vars])
    coeff = st.integers(-height, height)
    return st.dictionaries(expo, coeff, max_size=max_terms).map(lambda d: Poly(ctx, d))


def rings():
    return st.sampled_from([QXY, FXY])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(LINES):
            terminalreporter.write_line(LINES[number])
