from fractions import Fraction

from hypothesis import settings, strategies as st

from weylalg.phase import PhasePolynomial
from weylalg.torus import TorusPoint

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def fractions_mod1(draw, max_den=16):
    den = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(0, den - 1)), den)


def exact_points(max_den=16):
    return fractions_mod1(max_den).map(TorusPoint)


def exact_polys(max_degree=5, max_den=16):
    return st.lists(fractions_mod1(max_den), min_size=1, max_size=max_degree + 1).map(PhasePolynomial)


def float_polys(max_degree=4):
    return st.lists(st.floats(0, 1, exclude_max=True), min_size=1,
                    max_size=max_degree + 1).map(lambda cs: PhasePolynomial(cs, "float"))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
