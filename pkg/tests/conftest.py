from fractions import Fraction

from hypothesis import strategies as st

from klpoly.exact import Poly

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
alphas = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 7), Fraction(-1, 3)])


@st.composite
def polys(draw, var="x", max_degree=8):
    coeffs = draw(st.lists(rationals, min_size=0, max_size=max_degree + 1))
    return Poly(tuple(coeffs), var)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdict lines, which are otherwise captured."""
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call" and "test_acceptance" in rep.nodeid:
                lines += [ln for ln in rep.capstdout.splitlines() if ln.startswith(("PASS", "FAIL"))]
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(ln)
