from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from bscomm.bs_group import GroupContext
from bscomm.exact_arith import GMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

NS = (2, 3, 4, 6, 10, 12)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def record(criterion: int, passed: bool, detail: str = "") -> None:
        line = f"criterion {criterion:2d}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


ns = st.sampled_from(NS)


@st.composite
def elements(draw, n=None, num=60, exp=4, k=5):
    n = n if n is not None else draw(ns)
    ctx = GroupContext(n)
    u = Fraction(draw(st.integers(-num, num)), n ** draw(st.integers(0, exp)))
    return ctx.element(u, draw(st.integers(-k, k)))


@st.composite
def element_pairs(draw):
    n = draw(ns)
    return draw(elements(n)), draw(elements(n))


nonzero = st.integers(-50, 50).filter(bool)


@st.composite
def gmatrices(draw):
    q = Fraction(draw(st.integers(-50, 50)), draw(st.integers(1, 50)))
    p = Fraction(draw(nonzero), draw(st.integers(1, 50)))
    return GMatrix(q, p)
