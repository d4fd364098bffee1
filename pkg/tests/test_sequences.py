from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from klpoly.exact import Poly
from klpoly.functionals import gram_check, perturbed_laguerre_moments
from klpoly.orthogonality import extract_structural
from klpoly.sequences import (
    NINE_CONTIGUITY,
    Mps,
    ParameterError,
    Recurrence,
    RegularityError,
    appell_image_recurrence,
    bateman_recurrence,
    cdh_monic,
    cdh_recurrence,
    contiguity_checks,
    contiguity_report,
    dops_from_recurrence,
    hermite,
    hermite_type,
    hypergeom_pair,
    laguerre,
    laguerre_recurrence,
    mops_from_recurrence,
    perturbed_laguerre,
    perturbed_laguerre_a,
    perturbed_laguerre_a_pochhammer,
    perturbed_laguerre_c,
    reversed_appell,
    reversed_appell_image_recurrence,
    reversed_appell_lambda,
)
from klpoly.transform import delta_op, kl_forward, monomial_image

X = Poly((0, 1), "x")
Z = Poly((0, 1), "z")
HALF = Fraction(1, 2)
ALPHAS = (Fraction(0), HALF, Fraction(1))


def sympy_poly(expr, var="x"):
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.expand(expr), x).all_coeffs()[::-1]
    return Poly(tuple(Fraction(int(c.p), int(c.q)) for c in coeffs), var)


def test_laguerre_against_sympy():
    x = sympy.Symbol("x")
    for a1 in (Fraction(0), HALF, Fraction(7, 3)):
        L = laguerre(a1, 8)
        for n in range(9):
            oracle = sympy.assoc_laguerre(n, sympy.Rational(a1.numerator, a1.denominator), x)
            assert L[n] == sympy_poly((-1) ** n * sympy.factorial(n) * oracle)
    assert laguerre(0, 2)[2] == X * X - 4 * X + 2


def test_hermite_against_sympy():
    x = sympy.Symbol("x")
    H = hermite(8)
    for n in range(9):
        assert H[n] == sympy_poly(sympy.hermite(n, x) / 2 ** n)
    assert H[2] == X * X - HALF


def test_mops_zero_gamma():
    with pytest.raises(RegularityError):
        mops_from_recurrence(lambda n: Fraction(0), lambda m: Fraction(0), 3)


def test_dops_d1_matches_mops():
    rec = laguerre_recurrence(HALF)
    assert dops_from_recurrence(rec, 6).polys == mops_from_recurrence(rec.beta, lambda m: rec.lag(m, 1), 6).polys


def test_hermite_type():
    assert hermite_type(1, 2)[2] == X * X - HALF
    assert hermite_type(2, 3)[3] == X ** 3 - Fraction(1, 3)
    for d in (1, 2, 3, 4):
        H = hermite_type(d, 16)
        for n in range(16):
            assert H[n + 1].deriv() == (n + 1) * H[n]
        for n, p in enumerate(H):
            assert all(c == 0 for e, c in enumerate(p.coeffs) if (n - e) % (d + 1))


def test_reversed_appell_basic():
    a1, a2 = Fraction(1, 3), Fraction(5, 2)
    assert reversed_appell(1, (a1,), 1)[1] == X - (a1 + 1)
    assert reversed_appell(1, (a1,), 10).polys == laguerre(a1, 10).polys
    assert reversed_appell_lambda(2, (a1, a2)) == 1 / ((a1 + 1) * (a1 + 2) * (a2 + 1) * (a2 + 2))
    with pytest.raises(ParameterError):
        reversed_appell(2, (a1, Fraction(-3)), 4)


def test_reversed_appell_coefficients():
    # explicit series oracle: coefficient of x^k is (-n)_k / ((a1+1)_k (a2+1)_k k!) / lambda_n
    a1, a2 = Fraction(1, 3), Fraction(5, 2)
    R = reversed_appell(2, (a1, a2), 8)
    for n in range(9):
        lam = Fraction((-1) ** n)
        for s in range(n):
            lam /= (a1 + 1 + s) * (a2 + 1 + s)
        for k in range(n + 1):
            num = Fraction((-1) ** k * comb(n, k) * factorial(k))
            den = factorial(k)
            for s in range(k):
                den *= (a1 + 1 + s) * (a2 + 1 + s)
            assert R[n].coeff(k) == num / den / lam


def test_bateman_recurrence():
    a1, a2 = Fraction(1, 3), Fraction(5, 2)
    rec = bateman_recurrence(a1, a2)
    assert rec.beta(0) == (a1 + 1) * (a2 + 1)
    assert rec.gamma(1, 1) == (3 + a1 + a2) * (1 + a1) * (1 + a2)
    assert rec.generate(12).polys == reversed_appell(2, (a1, a2), 12).polys


@pytest.mark.parametrize("alpha", ALPHAS)
def test_reversed_appell_derivative_relations(alpha):
    for d, al in ((1, (HALF,)), (2, (Fraction(1), Fraction(3, 2))), (3, (0, HALF, Fraction(2)))):
        al = tuple(Fraction(a) for a in al)
        R = reversed_appell(d, al, 16)
        up = reversed_appell(d, tuple(a + 1 for a in al), 16)
        for n in range(15):
            lam_ratio = reversed_appell_lambda(n, al) / reversed_appell_lambda(n + 1, al)
            assert (X * R[n + 1]).deriv() == (n + 2) * R[n + 1] - (n + 1) * lam_ratio * R[n]
            assert R[n + 1].deriv() == (n + 1) * up[n]
        for n in range(10):
            lhs = delta_op(kl_forward(R[n + 1], alpha))
            assert lhs == (n + 1) * kl_forward(up[n], alpha + HALF)
            assert lhs != n * kl_forward(up[n], alpha + HALF)


def test_hypergeom_pair():
    a1, a2 = Fraction(2, 3), Fraction(1, 4)
    src, img = hypergeom_pair(0, 1, [], [a1 + 1], 8, HALF)
    assert src.polys == reversed_appell(1, (a1,), 8).polys
    src, img = hypergeom_pair(0, 2, [], [a1 + 1, a2 + 1], 8, 0)
    assert src.polys == reversed_appell(2, (a1, a2), 8).polys
    assert all(p.is_monic() and p.degree == n for n, p in enumerate(img))
    src, img = hypergeom_pair(1, 1, [Fraction(3, 2)], [Fraction(1, 3)], 6, 1)
    assert img.polys == src.image(1).polys
    with pytest.raises(ParameterError):
        hypergeom_pair(0, 1, [], [Fraction(-2)], 4, 0)


def test_cdh():
    alpha, a1, a2 = Fraction(0), Fraction(1), Fraction(3, 2)
    rec = cdh_recurrence(alpha, a1, a2)
    assert rec.lag(1, 1) == (a1 + 1) * (a2 + 1) * (a1 + a2 - 2 * alpha)
    S = cdh_monic(alpha, a1, a2, 12)
    assert S[1] == Z + (alpha + 1) ** 2 - (a1 + 1) * (a2 + 1)
    assert S.polys == reversed_appell(2, (a1, a2), 12).image(alpha).polys
    with pytest.raises(RegularityError):
        cdh_monic(0, 0, 0, 3)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_appell_image_recurrence(alpha, d):
    img = hermite_type(d, 14).image(alpha)
    assert appell_image_recurrence(d, alpha).generate(14, "z").polys == img.polys
    for n in range(1, 13):
        assert delta_op(img[n]) == n * kl_forward(hermite_type(d, n)[n - 1], alpha + HALF)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_appell_image_lag_value(alpha):
    # lag d+1 enters with a plus sign on S_{n-d-1}; stored negated
    assert -appell_image_recurrence(1, alpha).lag(2, 2) == 4 + 2 * alpha


def test_appell_image_printed_coefficient_differs():
    for d in (1, 2, 3):
        img = hermite_type(d, 14).image(HALF)
        printed = appell_image_recurrence(d, HALF, printed=True).generate(14, "z")
        assert printed.polys != img.polys
        # first disagreement at n = 2d + 3 where the last lag first acts with binom(n-2, d) != d+1
        first = next(n for n in range(15) if printed[n] != img[n])
        assert first >= 2 * d + 3


def test_appell_image_initial_values():
    # S_k agrees with the image of x^k only up to k = d
    for d in (1, 2, 3):
        img = hermite_type(d, 2 * d + 1).image(HALF)
        agree = [img[k] == monomial_image(k, HALF) for k in range(2 * d + 2)]
        assert all(agree[: d + 1])
        assert not any(agree[d + 1:])


@pytest.mark.parametrize("alpha", ALPHAS)
def test_reversed_appell_image_recurrence(alpha):
    cases = {1: (Fraction(1, 3),), 2: (Fraction(1), Fraction(3, 2)), 3: (Fraction(0), HALF, Fraction(2))}
    expected_d = {1: 2, 2: 1, 3: 3}
    for d, al in cases.items():
        img = reversed_appell(d, al, 11).image(alpha)
        rec = reversed_appell_image_recurrence(d, alpha, al)
        assert rec.generate(11, "z", check=False).polys == img.polys
        assert extract_structural(img).detected_d == expected_d[d]
    cdh = cdh_recurrence(alpha, 1, Fraction(3, 2))
    rec = reversed_appell_image_recurrence(2, alpha, (1, Fraction(3, 2)))
    for n in range(10):
        assert rec.beta(n) == cdh.beta(n)
        assert rec.lag(n, 2) == 0
        if n:
            assert rec.lag(n, 1) == cdh.lag(n, 1)


def test_perturbed_laguerre_examples():
    alpha, lam = HALF, Fraction(2)
    P = perturbed_laguerre(alpha, lam, 8)
    assert P.meta["beta"][0] == lam
    assert P.meta["a"][0] == (lam + (2 * alpha + 2 - lam) * (2 * alpha + 3)) / (2 * alpha + 2)
    for n in range(8):
        assert perturbed_laguerre_a(n, alpha, lam) == perturbed_laguerre_a_pochhammer(n, alpha, lam)
    assert gram_check(perturbed_laguerre_moments(alpha, lam), P, 8)


@pytest.mark.parametrize("alpha", [Fraction(0), HALF, Fraction(-1)])
def test_perturbed_laguerre_singular(alpha):
    with pytest.raises(RegularityError) as info:
        perturbed_laguerre(alpha, 1 / perturbed_laguerre_c(0, alpha), 5)
    assert info.value.level == 1
    with pytest.raises(RegularityError):
        perturbed_laguerre(alpha, 0, 3)


def test_contiguity():
    rep = contiguity_report(HALF, Fraction(1), Fraction(3, 2), 10)
    assert all(rep[k] for k in NINE_CONTIGUITY)
    assert not rep["R4_as_printed"]
    assert contiguity_checks(0, Fraction(1, 3), Fraction(2), 8)


def test_mps_requires_monic_graded():
    with pytest.raises(ValueError):
        Mps((Poly.one(), X * 2))
    with pytest.raises(ValueError):
        Mps((Poly.one(), X * X))


def test_recurrence_gamma_convention():
    rec = Recurrence.from_gammas(2, lambda n: Fraction(0), lambda j, m: Fraction(10 * j + m))
    assert rec.lag(5, 1) == rec.gamma(1, 5)
    assert rec.lag(5, 2) == rec.gamma(0, 4)
