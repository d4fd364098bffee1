"""The KL_alpha transform restricted to polynomials, plus its companion operators.

On polynomials the transform is the linear map sending ``x**n`` to the
central factorial ``|(alpha + 1 + i tau/2)_n|**2``, written here as a
polynomial in ``z = tau**2 / 4``:

    x**n  ->  prod_{s=1..n} ((alpha + s)**2 + z)

All functions are exact; ``alpha`` is any rational.
"""
from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

from .exact import (
    GaussRat,
    Poly,
    VariableMismatch,
    expand_in_basis,
    rat,
    shift_tau,
    to_tau,
    to_z,
)

_DEBUG = os.environ.get("KLPOLY_DEBUG", "") not in ("", "0")

X = Poly((0, 1), "x")
Z = Poly((0, 1), "z")


@lru_cache(maxsize=4096)
def _monomial_image(n: int, alpha: Fraction) -> Poly:
    if n == 0:
        return Poly.one("z")
    prev = _monomial_image(n - 1, alpha)
    return prev * Poly(((alpha + n) ** 2, 1), "z")


def monomial_image(n: int, alpha) -> Poly:
    """Image of ``x**n``: ``prod_{s=1}^{n} ((alpha+s)**2 + z)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _monomial_image(n, rat(alpha))


def central_factorial_basis(nmax: int, alpha) -> list[Poly]:
    return [monomial_image(k, alpha) for k in range(nmax + 1)]


def kl_forward(p: Poly, alpha) -> Poly:
    """Apply KL_alpha to a polynomial in ``x``; the result is in ``z``."""
    if p.var != "x":
        raise VariableMismatch("kl_forward expects a polynomial in x")
    alpha = rat(alpha)
    out = Poly.zero("z")
    for k, c in enumerate(p.coeffs):
        if c:
            out = out + monomial_image(k, alpha) * c
    return out


def kl_inverse(q: Poly, alpha) -> Poly:
    """Inverse transform: expand ``q`` over the central factorial basis."""
    if q.var != "z":
        raise VariableMismatch("kl_inverse expects a polynomial in z")
    if q.is_zero():
        return Poly.zero("x")
    coeffs = expand_in_basis(q, central_factorial_basis(q.degree, alpha))
    return Poly(tuple(coeffs), "x")


def kl_shift_check(f: Poly, n: int, alpha) -> bool:
    """Check ``KL_a[x^n f] == KL_a[x^n] * KL_{a+n}[f]`` exactly."""
    alpha = rat(alpha)
    lhs = kl_forward(f.shift_degree(n), alpha)
    rhs = monomial_image(n, alpha) * kl_forward(f, alpha + n)
    return lhs == rhs


def op_A(f: Poly) -> Poly:
    """``x^2 f'' + x f' - x f``; the Macdonald kernel is an eigenfunction."""
    d1 = f.deriv()
    d2 = d1.deriv()
    return d2.shift_degree(2) + d1.shift_degree(1) - f.shift_degree(1)


def _op_L_compositional(f: Poly, alpha: Fraction) -> Poly:
    xf = f.shift_degree(1)
    ax = op_A(xf)
    # op_A(x f) always vanishes at 0, so dividing by x is exact
    assert ax.coeff(0) == 0
    return Poly(ax.coeffs[1:], "x") + xf.deriv() * (2 * alpha)


def op_L(f: Poly, alpha) -> Poly:
    """``(1/x) A x + 2 alpha D x`` applied to ``f``.

    Expanded: ``x^2 f'' + (2a+3) x f' + (2a+1) f - x f``.  Its image under
    KL_alpha is ``-(z + alpha**2)`` times the image of ``f``.
    """
    alpha = rat(alpha)
    d1 = f.deriv()
    d2 = d1.deriv()
    out = d2.shift_degree(2) + d1.shift_degree(1) * (2 * alpha + 3) + f * (2 * alpha + 1) - f.shift_degree(1)
    if _DEBUG:
        assert out == _op_L_compositional(f, alpha), "op_L closed form disagrees with composition"
    return out


def op_L_power(f: Poly, alpha, m: int) -> Poly:
    for _ in range(m):
        f = op_L(f, alpha)
    return f


def op_M(f: Poly, beta) -> Poly:
    """``D x D + 2 beta D - 1`` i.e. ``x f'' + (2 beta + 1) f' - f``."""
    beta = rat(beta)
    d1 = f.deriv()
    return d1.deriv().shift_degree(1) + d1 * (2 * beta + 1) - f


def op_M_chain(f: Poly, alpha, m: int) -> Poly:
    """Apply ``op_M`` with ``beta = alpha+1, ..., alpha+m`` in that order.

    The image of the result under KL_{alpha+m} is ``(-1)**m`` times the image
    of ``f`` under KL_alpha.
    """
    alpha = rat(alpha)
    for s in range(m):
        f = op_M(f, alpha + s + 1)
    return f


# The central difference uses the step i and divides by (step * tau).  With a
# 2*step*tau denominator the first factorial identity would come out as 1/2.
DELTA_STEP = GaussRat(0, 1)


def delta_op(f: Poly) -> Poly:
    """Central difference ``(f(tau+i) - f(tau-i)) / (i tau)`` as a map on z-polynomials.

    Accepts an even polynomial in ``tau`` or a polynomial in ``z`` and returns a
    polynomial in ``z`` whose degree is one less.
    """
    if f.var == "z":
        p = to_tau(f)
    elif f.var == "tau":
        p = f
    else:
        raise VariableMismatch("delta_op expects a polynomial in tau or z")
    if p.is_zero():
        return Poly.zero("z")
    diff = shift_tau(p, DELTA_STEP) - shift_tau(p, -DELTA_STEP)
    if diff.is_zero():
        return Poly.zero("z")
    # divide by i*tau: the constant term of an odd difference is zero
    if diff.coeff(0):
        raise ArithmeticError("central difference has a constant term; input is not even")
    quotient = Poly(diff.coeffs[1:], "tau") / DELTA_STEP
    try:
        real = quotient.to_real()
    except ArithmeticError:
        raise ArithmeticError("imaginary residue after central difference") from None
    return to_z(real)


def _delta_self_check():
    a = Fraction(3, 2)
    got = delta_op(Poly((a * a, 1), "z"))
    if got != Poly.one("z"):
        raise AssertionError(f"delta normalisation broken: got {got}")


_delta_self_check()


def delta_lemma_checks(f: Poly, alpha) -> bool:
    """Both central difference identities for ``f`` at ``alpha``.

    * ``((alpha+1)^2 + z) delta^2 KL_a[f] == KL_a[x f'']``
    * ``KL_{a+1/2}[f'] == delta KL_a[f]``
    """
    alpha = rat(alpha)
    img = kl_forward(f, alpha)
    d1 = delta_op(img)
    d2 = delta_op(d1)
    lhs1 = Poly(((alpha + 1) ** 2, 1), "z") * d2
    rhs1 = kl_forward(f.deriv().deriv().shift_degree(1), alpha)
    rhs2 = kl_forward(f.deriv(), alpha + Fraction(1, 2))
    return lhs1 == rhs1 and rhs2 == d1
