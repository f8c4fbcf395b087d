from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_fractions(num: int = 9, den: int = 6):
    return st.builds(Fraction, st.integers(-num, num), st.integers(1, den))


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
