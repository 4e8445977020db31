import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from locmult.pwl import PwlFn, rat  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def rationals(draw, lo=-4, hi=4, max_den=12):
    den = draw(st.integers(1, max_den))
    num = draw(st.integers(lo * den, hi * den))
    return rat(num, den)


@st.composite
def pwl_fns(draw, lo=-3, hi=3, max_inner=4):
    inner = draw(st.sets(st.integers(1, 47), max_size=max_inner))
    xs = [rat(0)] + [rat(k, 48) for k in sorted(inner)] + [rat(1)]
    ys = [draw(rationals(lo, hi)) for _ in xs]
    return PwlFn(list(zip(xs, ys)))


@st.composite
def m_elements(draw, zero_at_0=True):
    """Nonnegative functions positive right after 0."""
    f = draw(pwl_fns(0, 2))
    xs, ys = list(f.xs), list(f.ys)
    if zero_at_0:
        ys[0] = rat(0)
    if ys[1] == 0 and (zero_at_0 or ys[0] == 0):
        ys[1] = draw(rationals(1, 2)) or rat(1, 2)
        if ys[1] <= 0:
            ys[1] = rat(1, 2)
    return PwlFn(list(zip(xs, ys)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
