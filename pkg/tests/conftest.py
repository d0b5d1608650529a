import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

SMALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def pytest_terminal_summary(terminalreporter):
    # acceptance verdict lines, one per criterion
    from tests_acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
