from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(lo=-5, hi=5, max_den=97):
    """Nonzero-denominator rationals in [lo, hi]."""
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def complexes(re=(-2.0, 2.0), im=(-2.0, 2.0)):
    return st.builds(
        complex,
        st.floats(*re, allow_nan=False, allow_infinity=False),
        st.floats(*im, allow_nan=False, allow_infinity=False),
    )


__all__ = ["Fraction", "rationals", "complexes"]


_CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERION_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
