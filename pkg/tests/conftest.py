from fractions import Fraction

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def char_counter(c):
    """CharacterElement -> {(num coeffs, den coeffs): mult} with Fraction entries."""
    return {
        (tuple(frac(x) for x in e.num.coeffs), tuple(frac(x) for x in e.den.coeffs)): m
        for e, m in c.terms.items()
    }


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
