"""Shared fixtures: canonical parameter sets and cached long codings."""

import pytest

from iet3.dynamics import IetParameters, ThreeIet
from iet3.qfield import parse_quadratic

GOLDEN = "(-1+sqrt(5))/2"


@pytest.fixture(scope="session")
def golden_params() -> IetParameters:
    """Exchange with epsilon the golden-ratio conjugate; idoc holds."""
    return IetParameters(
        parse_quadratic(GOLDEN), parse_quadratic("(1+sqrt(5))/4"), 0
    )


@pytest.fixture(scope="session")
def root_two_params() -> IetParameters:
    """Exchange with epsilon = sqrt(2)/2 and a negative offset."""
    return IetParameters(
        parse_quadratic("1/2*sqrt(2)"),
        parse_quadratic("(6+sqrt(2))/8"),
        parse_quadratic("-1/10"),
    )


@pytest.fixture(scope="session")
def degenerate_params() -> IetParameters:
    """l lands in Z[epsilon], so the orbit collapses to rotation behaviour."""
    eps = parse_quadratic(GOLDEN)
    return IetParameters(eps, 2 - 2 * eps, 0)


@pytest.fixture(scope="session")
def golden_word_100k(golden_params):
    """100 000-letter coding of the golden-parameter exchange (cached)."""
    return ThreeIet(golden_params).code_orbit(100_000).word
