"""Exact rational arithmetic and dense polynomial algebra.

Every symbolic object in the package is built from :class:`fractions.Fraction`
coefficients.  Gaussian rationals only show up while a polynomial in ``tau`` is
shifted by an imaginary step; public results are always real-rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rat = Fraction

VARS = ("x", "tau", "z")


class VariableMismatch(ValueError):
    """Raised when polynomials in different variables are combined."""


class BasisError(ValueError):
    """Raised when a basis is not graded and monic."""


def rat(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rat(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational literal {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rat(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n``; works for any ring element ``a``."""
    out = Fraction(1)
    for k in range(n):
        out = out * (a + k)
    return out


class GaussRat:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rat(re)
        self.im = rat(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        out = GaussRat(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({format_rat(self.re)}, {format_rat(self.im)})"


I = GaussRat(0, 1)

Coeff = Union[Fraction, GaussRat]


def _trim(coeffs: Sequence[Coeff]) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with exact coefficients, ascending in degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        if self.var not in VARS:
            raise ValueError(f"unknown variable tag {self.var!r}")
        normed = tuple(c if isinstance(c, (Fraction, GaussRat)) else rat(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", _trim(normed))

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "x") -> "Poly":
        return cls((c,), var)

    @classmethod
    def zero(cls, var: str = "x") -> "Poly":
        return cls((), var)

    @classmethod
    def one(cls, var: str = "x") -> "Poly":
        return cls((Fraction(1),), var)

    @classmethod
    def monomial(cls, n: int, var: str = "x", c=1) -> "Poly":
        return cls((Fraction(0),) * n + (rat(c) if not isinstance(c, GaussRat) else c,), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> "Poly":
        p = cls.one(var)
        for r in roots:
            p = p * cls((-rat(r), Fraction(1)), var)
        return p

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_real(self) -> bool:
        return all(not isinstance(c, GaussRat) or c.im == 0 for c in self.coeffs)

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.var != other.var:
            raise VariableMismatch(f"cannot combine polynomials in {self.var!r} and {other.var!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return Poly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            return Poly(tuple(c * other for c in self.coeffs), self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out), self.var)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        if isinstance(scalar, GaussRat):
            inv = scalar.inverse()
        else:
            inv = 1 / scalar
        return self * inv

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def shift_degree(self, k: int) -> "Poly":
        """Multiply by ``var**k``."""
        if not self.coeffs:
            return self
        return Poly((Fraction(0),) * k + self.coeffs, self.var)

    def deriv(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k), self.var)

    def __call__(self, value):
        acc = Fraction(0) if not isinstance(value, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_float(self, value: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * value + float(c)
        return acc

    def compose_affine(self, a, b) -> "Poly":
        """Return ``p(a*var + b)``."""
        lin = Poly((rat(b), rat(a)), self.var)
        out = Poly.zero(self.var)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def theta(self, c=0) -> "Poly":
        """Divided difference ``(p(v) - p(c)) / (v - c)``."""
        c = rat(c)
        # synthetic division; the remainder is p(c)
        n = len(self.coeffs)
        if n <= 1:
            return Poly.zero(self.var)
        q = [Fraction(0)] * (n - 1)
        acc = Fraction(0)
        for k in range(n - 1, 0, -1):
            acc = acc * c + self.coeffs[k]
            q[k - 1] = acc
        return Poly(tuple(q), self.var)

    def divmod_linear(self, c) -> tuple["Poly", Fraction]:
        """Divide by ``(v - c)``; returns quotient and remainder."""
        return self.theta(c), self(rat(c))

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def real_part(self) -> "Poly":
        return Poly(tuple(c.re if isinstance(c, GaussRat) else c for c in self.coeffs), self.var)

    def imag_part(self) -> "Poly":
        return Poly(tuple(c.im if isinstance(c, GaussRat) else Fraction(0) for c in self.coeffs), self.var)

    def to_real(self) -> "Poly":
        """Drop a vanishing imaginary part; raise if anything is left over."""
        if not self.imag_part().is_zero():
            raise ArithmeticError("polynomial has a nonzero imaginary residue")
        return self.real_part()

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [format_rat(c) for c in self.to_real().coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        return cls(tuple(parse_rat(c) for c in data["coeffs"]), data.get("var", "x"))

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "Poly":
        """Parse comma separated ``"p/q"`` coefficients, lowest degree first."""
        items = text.split(",") if text.strip() else []
        coeffs = []
        pos = 0
        for k, item in enumerate(items):
            try:
                coeffs.append(parse_rat(item))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"coefficient {k} (column {pos}): {exc}") from None
            pos += len(item) + 1
        return cls(tuple(coeffs), var)

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(0, {self.var})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            s = repr(c) if isinstance(c, GaussRat) else format_rat(c)
            terms.append(s if k == 0 else f"{s}*{self.var}^{k}")
        return f"Poly({' + '.join(terms)})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    if a.var != b.var:
        raise VariableMismatch(f"cannot combine polynomials in {a.var!r} and {b.var!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    return a * b


def shift_tau(p: Poly, w) -> Poly:
    """Exact composition ``p(tau + w)`` for a Gaussian-rational ``w``."""
    if p.var != "tau":
        raise VariableMismatch("shift_tau expects a polynomial in tau")
    w = w if isinstance(w, GaussRat) else GaussRat(rat(w))
    n = len(p.coeffs)
    out = [GaussRat(0)] * n
    wpow = [GaussRat(1)]
    for _ in range(n):
        wpow.append(wpow[-1] * w)
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        for j in range(k + 1):
            out[j] = out[j] + c * comb(k, j) * wpow[k - j]
    coeffs = tuple(c.re if c.im == 0 else c for c in out)
    return Poly(coeffs, "tau")


def expand_in_basis(p: Poly, basis: Sequence[Poly]) -> list:
    """Coefficients ``c`` with ``p = sum(c[k] * basis[k])``.

    ``basis`` must be graded (``deg basis[k] == k``) and monic; the solve is a
    back substitution from the top degree.
    """
    if p.degree >= len(basis):
        raise BasisError(f"basis of length {len(basis)} cannot represent degree {p.degree}")
    for k, b in enumerate(basis[: max(p.degree, 0) + 1]):
        if b.var != p.var:
            raise VariableMismatch(f"basis element {k} is in {b.var!r}, expected {p.var!r}")
        if b.degree != k or not b.is_monic():
            raise BasisError(f"basis element {k} is not monic of degree {k}")
    out = [Fraction(0)] * len(basis)
    rem = list(p.coeffs)
    for k in range(p.degree, -1, -1):
        c = rem[k]
        out[k] = c
        if c:
            for j, bj in enumerate(basis[k].coeffs):
                rem[j] = rem[j] - c * bj
    return out


def to_z(p: Poly) -> Poly:
    """Rewrite an even polynomial in ``tau`` in the variable ``z = tau**2 / 4``."""
    if p.var != "tau":
        raise VariableMismatch("to_z expects a polynomial in tau")
    if not p.is_real():
        raise ArithmeticError("to_z expects real coefficients")
    p = p.real_part()
    if any(c for c in p.coeffs[1::2]):
        raise ValueError("polynomial in tau has a nonzero odd part")
    return Poly(tuple(c * 4**k for k, c in enumerate(p.coeffs[0::2])), "z")


def to_tau(p: Poly) -> Poly:
    """Substitute ``z = tau**2 / 4``."""
    if p.var != "z":
        raise VariableMismatch("to_tau expects a polynomial in z")
    out = []
    for k, c in enumerate(p.coeffs):
        out.append(c / 4**k)
        out.append(Fraction(0))
    return Poly(tuple(out), "tau")


class TriMatrix:
    """Lower triangular table of rationals; row ``n`` holds ``n + 1`` entries."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [tuple(rat(v) for v in row) for row in rows]
        for n, row in enumerate(self.rows):
            if len(row) != n + 1:
                raise ValueError(f"row {n} has {len(row)} entries, expected {n + 1}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx):
        n, k = idx
        if 0 <= k <= n < len(self.rows):
            return self.rows[n][k]
        if 0 <= n < len(self.rows) and k > n:
            return Fraction(0)
        raise IndexError(idx)

    def __eq__(self, other):
        return isinstance(other, TriMatrix) and self.rows == other.rows

    def is_unit_lower(self) -> bool:
        return all(row[-1] == 1 for row in self.rows)

    def __matmul__(self, other: "TriMatrix") -> "TriMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        rows = []
        for n in range(self.size):
            rows.append([sum((self[n, j] * other[j, k] for j in range(k, n + 1)), Fraction(0))
                         for k in range(n + 1)])
        return TriMatrix(rows)

    def inverse(self) -> "TriMatrix":
        """Inverse by forward substitution, column by column."""
        size = self.size
        inv = [[Fraction(0)] * (n + 1) for n in range(size)]
        for k in range(size):
            for n in range(k, size):
                acc = Fraction(1) if n == k else Fraction(0)
                for j in range(k, n):
                    acc -= self[n, j] * inv[j][k]
                if self[n, n] == 0:
                    raise ZeroDivisionError("singular triangular matrix")
                inv[n][k] = acc / self[n, n]
        return TriMatrix(inv)

    @classmethod
    def identity(cls, size: int) -> "TriMatrix":
        return cls([[Fraction(int(k == n)) for k in range(n + 1)] for n in range(size)])

    def to_csv_rows(self) -> list[tuple[int, int, str]]:
        return [(n, k, format_rat(v)) for n, row in enumerate(self.rows) for k, v in enumerate(row)]

    def __repr__(self):
        return f"TriMatrix(size={self.size})"
