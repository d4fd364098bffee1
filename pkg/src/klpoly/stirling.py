"""Non-centered central factorial numbers.

``t[n, v]`` expands the central factorial ``|(alpha+1+i tau/2)_n|^2`` in powers
of ``w = z + alpha**2``; ``T[n, v]`` expands ``w**n`` back over the central
factorials.  The two tables are mutually inverse unit lower triangular
matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, TriMatrix, rat
from .transform import kl_forward, monomial_image, op_L


@dataclass(frozen=True)
class StirlingTables:
    alpha: Fraction
    t: TriMatrix
    T: TriMatrix

    @property
    def nmax(self) -> int:
        return self.t.size - 1


def build_tables(nmax: int, alpha) -> StirlingTables:
    """Fill both tables from their triangular recurrences.

    t[n+1, v] = t[n, v-1] + (2a + n + 1)(n + 1) t[n, v]
    T[n+1, v] = T[n, v-1] - (2a + v + 1)(v + 1) T[n, v]
    """
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    alpha = rat(alpha)
    t = [[Fraction(1)]]
    T = [[Fraction(1)]]
    for n in range(nmax):
        prev_t, prev_T = t[-1], T[-1]
        row_t, row_T = [], []
        for v in range(n + 2):
            left_t = prev_t[v - 1] if v >= 1 else Fraction(0)
            left_T = prev_T[v - 1] if v >= 1 else Fraction(0)
            here_t = prev_t[v] if v <= n else Fraction(0)
            here_T = prev_T[v] if v <= n else Fraction(0)
            row_t.append(left_t + (2 * alpha + n + 1) * (n + 1) * here_t)
            row_T.append(left_T - (2 * alpha + v + 1) * (v + 1) * here_T)
        t.append(row_t)
        T.append(row_T)
    return StirlingTables(alpha, TriMatrix(t), TriMatrix(T))


def w_power_basis(n: int, alpha) -> Poly:
    """``(z + alpha**2)**n``."""
    alpha = rat(alpha)
    return Poly((alpha * alpha, 1), "z") ** n


def substitution_row(n: int, alpha) -> list[Fraction]:
    """Row ``n`` of ``t`` by substituting ``z = w - alpha**2`` into the central factorial.

    Independent of the recurrences in :func:`build_tables`.
    """
    alpha = rat(alpha)
    as_w = monomial_image(n, alpha).compose_affine(1, -alpha * alpha)
    return [as_w.coeff(v) for v in range(n + 1)]


def pn_alpha(n: int, alpha, tables: StirlingTables | None = None) -> Poly:
    """``P_n(x; alpha) = (-L)^n [1]``, whose transform is ``(z + alpha**2)**n``.

    The coefficient of ``x**v`` equals ``T[n, v]``; this is asserted against
    the table (built on demand when not supplied).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = rat(alpha)
    p = Poly.one("x")
    for _ in range(n):
        p = -op_L(p, alpha)
    if tables is None or tables.nmax < n or tables.alpha != alpha:
        tables = build_tables(n, alpha)
    expected = [tables.T[n, v] for v in range(n + 1)]
    if list(p.coeffs) != expected:
        raise AssertionError(f"P_{n}(x; {alpha}) disagrees with the T table")
    return p


def mixed_image(m: int, n: int, alpha) -> Poly:
    """``KL_a[L^m x^n]``, asserted equal to ``(-1)^m (z + a^2)^m`` times the image of ``x^n``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    alpha = rat(alpha)
    f = Poly.monomial(n, "x")
    for _ in range(m):
        f = op_L(f, alpha)
    img = kl_forward(f, alpha)
    expected = w_power_basis(m, alpha) * monomial_image(n, alpha) * (-1) ** m
    if img != expected:
        raise AssertionError(f"mixed image mismatch at m={m}, n={n}")
    return img
