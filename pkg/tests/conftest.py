from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nregular.quat_core import Biquaternion, gr

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gaussian = st.builds(lambda a, b: gr(a, b), small_q, small_q)
gaussian_int = st.builds(lambda a, b: gr(a, b), st.integers(-4, 4), st.integers(-4, 4))
biquaternion = st.builds(Biquaternion, gaussian, gaussian, gaussian, gaussian)
real_coords = st.tuples(small_q, small_q, small_q, small_q)


def half(x) -> int:
    """Doubled half-integer from a Fraction or int: half(Fraction(3, 2)) == 3."""
    return int(Fraction(x) * 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
