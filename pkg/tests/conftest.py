from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

from kcompletion.cyclotomic import Cyclotomic
from kcompletion.laurent import LaurentPoly
from kcompletion.rootdatum import TorsionPoint

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw, conductors=(1, 3, 4, 5, 8, 12)):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(small_fractions, min_size=1, max_size=n))
    return Cyclotomic(n, coeffs)


@st.composite
def laurent_polys(draw, rank=1, max_terms=4, span=3, rational=True):
    exps = draw(
        st.lists(st.tuples(*[st.integers(-span, span)] * rank), min_size=0, max_size=max_terms, unique=True)
    )
    coeff = st.integers(-3, 3) if rational else cyclotomics(conductors=(1, 3, 4))
    return LaurentPoly(rank, {e: draw(coeff) for e in exps})


@st.composite
def torsion_points(draw, rank=1, orders=(1, 2, 3, 4, 6)):
    n = draw(st.sampled_from(orders))
    return TorsionPoint([Fraction(draw(st.integers(0, n - 1)), n) for _ in range(rank)])
