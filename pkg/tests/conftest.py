from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcpnash.lcp import ExtendedInstance

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

small_ints = st.integers(min_value=-5, max_value=5).map(Fraction)
positive_rationals = st.builds(Fraction, st.integers(1, 4), st.integers(1, 4))


@st.composite
def square_matrices(draw, m: int, elements=small_ints):
    return tuple(tuple(draw(elements) for _ in range(m)) for _ in range(m))


@st.composite
def instances(draw, max_m: int = 3, nontrivial: bool = True, covering: bool = False):
    m = draw(st.integers(1, max_m))
    M = draw(square_matrices(m))
    q = tuple(draw(small_ints) for _ in range(m))
    if nontrivial and all(v >= 0 for v in q):
        q = (Fraction(-1 - abs(q[0])),) + q[1:]
    d = tuple(draw(positive_rationals) for _ in range(m)) if covering else None
    return ExtendedInstance.build(M, q, d)


def F(*values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
