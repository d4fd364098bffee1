"""Polynomial sequences: generic recurrences and the concrete families.

A :class:`Recurrence` of order ``d + 1`` generates a monic sequence through

    P_{n+1} = (v - beta_n) P_n - sum_{k=1}^{min(d, n)} c_{n,k} P_{n-k},

where ``c_{n,k}`` is the coefficient at lag ``k``.  In the superscript
convention ``gamma^{j}_{m}`` used for d-orthogonal sequences the lag ``k``
coefficient of step ``n`` is ``gamma^{d-k}_{n-k+1}``; see
:meth:`Recurrence.from_gammas`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .exact import Poly, expand_in_basis, pochhammer, rat
from .transform import kl_forward, monomial_image


class RegularityError(ValueError):
    """A recurrence coefficient that must not vanish does vanish."""

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class ParameterError(ValueError):
    """Inadmissible family parameters."""


@dataclass(frozen=True)
class Mps:
    """Finite prefix of a monic polynomial sequence."""

    polys: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        for k, p in enumerate(self.polys):
            if p.degree != k or not p.is_monic():
                raise ValueError(f"element {k} is not monic of degree {k}")

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, k):
        return self.polys[k]

    def __iter__(self):
        return iter(self.polys)

    @property
    def var(self) -> str:
        return self.polys[0].var if self.polys else "x"

    def image(self, alpha) -> "Mps":
        """Term-by-term KL_alpha image."""
        return Mps(tuple(kl_forward(p, alpha) for p in self.polys),
                   {"family": f"KL[{self.meta.get('family', '?')}]", "alpha": rat(alpha)})

    def to_json(self) -> dict:
        return {"var": self.var, "polys": [p.to_json()["coeffs"] for p in self.polys]}


@dataclass(frozen=True)
class Recurrence:
    """Order ``d + 1`` recurrence with callables for the coefficients."""

    d: int
    beta: Callable[[int], Fraction]
    lag: Callable[[int, int], Fraction]
    name: str = ""

    @classmethod
    def from_gammas(cls, d: int, beta, gamma, name: str = "") -> "Recurrence":
        """Build from ``gamma(j, m)`` meaning ``gamma^j_m``."""
        return cls(d, beta, lambda n, k: gamma(d - k, n - k + 1), name)

    @classmethod
    def three_term(cls, beta, gamma, name: str = "") -> "Recurrence":
        """``gamma(m)`` is the usual ``gamma_m`` of a three-term recurrence."""
        return cls(1, beta, lambda n, k: gamma(n), name)

    def gamma(self, j: int, m: int) -> Fraction:
        """``gamma^j_m`` in the superscript convention."""
        k = self.d - j
        return self.lag(m + k - 1, k)

    def generate(self, n: int, var: str = "x", check: bool = True) -> Mps:
        """First ``n + 1`` members of the sequence."""
        seq = [Poly.one(var)]
        v = Poly((0, 1), var)
        for m in range(n):
            nxt = (v - self.beta(m)) * seq[m]
            for k in range(1, min(self.d, m) + 1):
                c = self.lag(m, k)
                if c:
                    nxt = nxt - seq[m - k] * c
            if check and m >= self.d and self.lag(m, self.d) == 0:
                raise RegularityError(
                    f"lowest coefficient vanishes at step {m} of {self.name or 'recurrence'}",
                    level=m - self.d + 1)
            seq.append(nxt)
        return Mps(tuple(seq), {"family": self.name, "recurrence": self})

    def table(self, nmax: int) -> list[dict]:
        rows = []
        for n in range(nmax + 1):
            rows.append({"n": n, "beta": self.beta(n),
                         "lags": [self.lag(n, k) if k <= n else Fraction(0)
                                  for k in range(1, self.d + 1)]})
        return rows


def mops_from_recurrence(beta, gamma, n: int, var: str = "x", name: str = "") -> Mps:
    """Monic orthogonal sequence from ``beta(k)`` and ``gamma(k)``, ``k >= 1`` for gamma."""
    rec = Recurrence.three_term(beta, gamma, name)
    for k in range(1, n):
        if gamma(k) == 0:
            raise RegularityError(f"gamma_{k} vanishes", level=k)
    return rec.generate(n, var)


def dops_from_recurrence(rec: Recurrence, n: int, var: str = "x") -> Mps:
    return rec.generate(n, var)


# -- classical families ---------------------------------------------------

def laguerre_recurrence(a1) -> Recurrence:
    a1 = rat(a1)
    return Recurrence.three_term(lambda n: 2 * n + a1 + 1,
                                 lambda m: m * (m + a1), name=f"laguerre({a1})")


def laguerre(a1, n: int) -> Mps:
    """Monic Laguerre polynomials of parameter ``a1``."""
    a1 = rat(a1)
    if a1.denominator == 1 and a1 < 0:
        raise ParameterError("Laguerre parameter must not be a negative integer")
    rec = laguerre_recurrence(a1)
    mps = rec.generate(n)
    return Mps(mps.polys, {"family": "laguerre", "params": {"a1": a1}, "recurrence": rec})


def hermite_recurrence() -> Recurrence:
    return Recurrence.three_term(lambda n: Fraction(0), lambda m: Fraction(m, 2), name="hermite")


def hermite(n: int) -> Mps:
    """Monic Hermite polynomials (weight ``exp(-x^2)``)."""
    rec = hermite_recurrence()
    return Mps(rec.generate(n).polys, {"family": "hermite", "recurrence": rec})


def hermite_type(d: int, n: int) -> Mps:
    """d-symmetric Appell d-orthogonal sequence of Hermite type.

    H_{m+d+1} = x H_{m+d} - binom(m+d, d) / (d+1) H_m, with H_k = x^k for k <= d.
    """
    if d < 1:
        raise ParameterError("d must be at least 1")
    rec = Recurrence(d, lambda m: Fraction(0),
                     lambda m, k: Fraction(comb(m, d), d + 1) if k == d else Fraction(0),
                     name=f"hermite_type({d})")
    mps = rec.generate(n)
    return Mps(mps.polys, {"family": "hermite-type", "params": {"d": d}, "recurrence": rec})


# -- reversed Appell / hypergeometric ------------------------------------

def _check_alphas(alphas: Sequence[Fraction]):
    for a in alphas:
        if a.denominator == 1 and a <= -1:
            raise ParameterError(f"parameter {a} is a negative integer")


def reversed_appell_lambda(n: int, alphas) -> Fraction:
    """``lambda_n = (-1)^n / prod_j (alpha_j + 1)_n``."""
    alphas = [rat(a) for a in alphas]
    den = Fraction(1)
    for a in alphas:
        den *= pochhammer(a + 1, n)
    return Fraction((-1) ** n) / den


def reversed_appell_poly(n: int, alphas) -> Poly:
    alphas = [rat(a) for a in alphas]
    inv_lam = 1 / reversed_appell_lambda(n, alphas)
    coeffs = []
    for k in range(n + 1):
        den = Fraction(factorial(k))
        for a in alphas:
            den *= pochhammer(a + 1, k)
        coeffs.append(inv_lam * pochhammer(-n, k) / den)
    return Poly(tuple(coeffs), "x")


def reversed_appell(d: int, alphas, n: int) -> Mps:
    """Monic ``1F_d(-n; alpha_1+1, ..., alpha_d+1; x)`` normalised by ``lambda_n``."""
    alphas = tuple(rat(a) for a in alphas)
    if d < 1 or len(alphas) != d:
        raise ParameterError(f"expected {d} parameters, got {len(alphas)}")
    _check_alphas(alphas)
    polys = tuple(reversed_appell_poly(k, alphas) for k in range(n + 1))
    return Mps(polys, {"family": "reversed-appell", "params": {"d": d, "alphas": alphas}})


def bateman_recurrence(a1, a2) -> Recurrence:
    """Three-term-plus-one recurrence of the d = 2 reversed Appell sequence."""
    a1, a2 = rat(a1), rat(a2)

    def beta(n):
        return 3 * n * n + (2 * a1 + 2 * a2 + 3) * n + (a1 + 1) * (a2 + 1)

    def gamma(j, n):
        if j == 1:
            return n * (3 * n + a1 + a2) * (n + a1) * (n + a2)
        return n * (n + 1) * (n + a1 + 1) * (n + a1) * (n + a2 + 1) * (n + a2)

    return Recurrence.from_gammas(2, beta, gamma, name=f"bateman({a1},{a2})")


class _ExtractedRecurrence:
    """Recurrence coefficients of a sequence read off its structural relation.

    Works for any graded monic sequence generator; the prefix is grown on
    demand and cached.
    """

    def __init__(self, make_poly: Callable[[int], Poly], d: int):
        self.make_poly = make_poly
        self.d = d
        self.polys: list[Poly] = []
        self.rows: list[list[Fraction]] = []

    def _grow(self, n: int):
        while len(self.polys) < n + 2:
            self.polys.append(self.make_poly(len(self.polys)))
        while len(self.rows) <= n:
            m = len(self.rows)
            r = self.polys[m + 1] - self.polys[m].shift_degree(1)
            coeffs = expand_in_basis(r, self.polys[: m + 1]) if not r.is_zero() else [Fraction(0)] * (m + 1)
            # x P_m = P_{m+1} + beta_m P_m + sum c_{m,k} P_{m-k}
            row = [-c for c in coeffs[: m + 1]]
            self.rows.append(row)
            for k in range(self.d + 1, m + 1):
                if row[m - k]:
                    raise RegularityError(f"sequence is not {self.d}-orthogonal at step {m}")

    def beta(self, n: int) -> Fraction:
        self._grow(n)
        return self.rows[n][n]

    def lag(self, n: int, k: int) -> Fraction:
        if k > n:
            return Fraction(0)
        self._grow(n)
        return self.rows[n][n - k]


def reversed_appell_recurrence(d: int, alphas) -> Recurrence:
    """Recurrence of the reversed Appell d-orthogonal sequence.

    Closed forms for ``d = 1`` (Laguerre) and ``d = 2``; for ``d >= 3`` the
    coefficients are extracted exactly from the explicit polynomials.
    """
    alphas = tuple(rat(a) for a in alphas)
    _check_alphas(alphas)
    if d == 1:
        return laguerre_recurrence(alphas[0])
    if d == 2:
        return bateman_recurrence(*alphas)
    ext = _ExtractedRecurrence(lambda k: reversed_appell_poly(k, alphas), d)
    return Recurrence(d, ext.beta, ext.lag, name=f"reversed_appell({d})")


def hypergeom_series_image(n: int, a: Sequence, b: Sequence, alpha) -> Poly:
    """``(-1)^n prod(b)_n / prod(a)_n`` times the terminating
    ``{p+3}F_q(-n, a, alpha+1-i tau/2, alpha+1+i tau/2; b; 1)`` as a z-polynomial.

    Summed term by term from the hypergeometric term ratio, so it shares no code
    path with :func:`kl_forward`.
    """
    alpha = rat(alpha)
    pref = Fraction((-1) ** n)
    for bj in b:
        pref *= pochhammer(bj, n)
    for aj in a:
        pref /= pochhammer(aj, n)
    term = Poly.one("z")
    total = Poly.one("z")
    for k in range(1, n + 1):
        ratio = Fraction(-n + k - 1, k)
        for aj in a:
            ratio *= aj + k - 1
        for bj in b:
            ratio /= bj + k - 1
        # (alpha+k-i tau/2)(alpha+k+i tau/2) = (alpha+k)^2 + z
        term = term * Poly(((alpha + k) ** 2, 1), "z") * ratio
        total = total + term
    return total * pref


def hypergeom_poly(n: int, a: Sequence, b: Sequence) -> Poly:
    """``(-1)^n prod(b)_n / prod(a)_n {p+1}F_q(-n, a; b; x)``; monic of degree n."""
    pref = Fraction((-1) ** n)
    for bj in b:
        pref *= pochhammer(bj, n)
    for aj in a:
        pref /= pochhammer(aj, n)
    coeffs = []
    for k in range(n + 1):
        c = pochhammer(-n, k) / factorial(k)
        for aj in a:
            c *= pochhammer(aj, k)
        for bj in b:
            c /= pochhammer(bj, k)
        coeffs.append(pref * c)
    return Poly(tuple(coeffs), "x")


def hypergeom_pair(p: int, q: int, a: Sequence, b: Sequence, n: int, alpha) -> tuple[Mps, Mps]:
    """Hypergeometric MPS and its transform, checked against the series form."""
    a = tuple(rat(v) for v in a)
    b = tuple(rat(v) for v in b)
    if len(a) != p or len(b) != q:
        raise ParameterError(f"expected {p} numerator and {q} denominator parameters")
    for k in range(n + 1):
        for bj in b:
            if pochhammer(bj, k) == 0:
                raise ParameterError(f"denominator Pochhammer ({bj})_{k} vanishes")
        for aj in a:
            if pochhammer(aj, k) == 0:
                raise ParameterError(f"numerator Pochhammer ({aj})_{k} vanishes")
    src = Mps(tuple(hypergeom_poly(k, a, b) for k in range(n + 1)),
              {"family": "hypergeom", "params": {"a": a, "b": b}})
    img = src.image(alpha)
    for k in range(n + 1):
        if img[k] != hypergeom_series_image(k, a, b, alpha):
            raise AssertionError(f"image of degree {k} disagrees with the series")
    return src, img


# -- transformed recurrences ---------------------------------------------

def appell_image_recurrence(d: int, alpha, printed: bool = False) -> Recurrence:
    """Recurrence with lags ``d``, ``d+1`` and ``2d+2`` satisfied by the image of
    ``hermite_type(d)``, generated from ``S_0 = 1``:

        S_{n+1} = (z + (n+1+a)^2) S_n - binom(n,d)/(d+1) S_{n-d}
                  + (2n+2a+1-d) binom(n,d+1) S_{n-d-1}
                  + n(n-1) binom(n-2,d) binom(n-d-2,d)/(d+1)^2 S_{n-2d-2}

    With ``printed=True`` the last coefficient is the commonly quoted
    ``n(n-1) binom(n-d-2,d)/(d+1)``, which lacks the factor
    ``binom(n-2,d)/(d+1)`` and does not reproduce the image.
    """
    if d < 1:
        raise ParameterError("d must be at least 1")
    alpha = rat(alpha)

    def binom(m, k):
        return comb(m, k) if m >= 0 else 0

    def lag(n, k):
        if k == d:
            return Fraction(binom(n, d), d + 1)
        if k == d + 1:
            return -(2 * n + 2 * alpha + 1 - d) * binom(n, d + 1)
        if k == 2 * d + 2:
            if printed:
                return -Fraction(n * (n - 1) * binom(n - d - 2, d), d + 1)
            return -Fraction(n * (n - 1) * binom(n - 2, d) * binom(n - d - 2, d), (d + 1) ** 2)
        return Fraction(0)

    return Recurrence(2 * d + 2, lambda n: -(n + 1 + alpha) ** 2, lag,
                      name=f"KL[hermite_type({d})]")


def reversed_appell_image_recurrence(d: int, alpha, alphas) -> Recurrence:
    """Recurrence of the image of the reversed Appell d-orthogonal sequence.

    The diagonal shifts by ``-(n+1+alpha)^2``; only lags 1 and 2 pick up
    corrections, everything deeper is inherited unchanged.
    """
    alpha = rat(alpha)
    alphas = tuple(rat(a) for a in alphas)
    base = reversed_appell_recurrence(d, alphas)

    def prod_shift(m):
        out = Fraction(1)
        for a in alphas:
            out *= m + a
        return out

    def beta(m):
        return base.beta(m) - (m + 1 + alpha) ** 2

    def lag(m, k):
        c = base.lag(m, k) if k <= d else Fraction(0)
        if k == 1:
            c -= m * (2 * m + 1 + 2 * alpha) * prod_shift(m)
        elif k == 2:
            c -= (m - 1) * m * prod_shift(m) * prod_shift(m - 1)
        return c

    return Recurrence(max(d, 2), beta, lag, name=f"KL[reversed_appell({d})]")


def cdh_recurrence(alpha, a1, a2) -> Recurrence:
    """Three-term recurrence of the monic continuous dual Hahn polynomials in ``z``."""
    alpha, a1, a2 = rat(alpha), rat(a1), rat(a2)

    def beta(n):
        if n == 0:
            return (a1 + 1) * (a2 + 1) - (alpha + 1) ** 2
        m = n - 1
        return (-alpha * (alpha + 4) + 2 * m * m + (5 - 2 * alpha) * m
                + a2 * (2 * m + 3) + a1 * (a2 + 2 * m + 3) + 3)

    def gamma(n):
        m = n - 1
        return (m + 1) * (a1 + m + 1) * (a2 + m + 1) * (a1 + a2 - 2 * alpha + m)

    return Recurrence.three_term(beta, gamma, name=f"cdh({alpha},{a1},{a2})")


def cdh_monic(alpha, a1, a2, n: int) -> Mps:
    """Monic continuous dual Hahn polynomials, asserted equal to the transform
    of the d = 2 reversed Appell sequence."""
    alpha, a1, a2 = rat(alpha), rat(a1), rat(a2)
    rec = cdh_recurrence(alpha, a1, a2)
    for k in range(1, n):
        if rec.lag(k, 1) == 0:
            raise RegularityError(f"continuous dual Hahn gamma_{k} vanishes", level=k)
    mps = rec.generate(n, "z")
    img = reversed_appell(2, (a1, a2), n).image(alpha)
    if mps.polys != img.polys:
        raise AssertionError("continuous dual Hahn recurrence disagrees with the transform")
    return Mps(mps.polys, {"family": "cdh", "params": {"alpha": alpha, "a1": a1, "a2": a2},
                           "recurrence": rec})


# -- perturbed Laguerre --------------------------------------------------

def perturbed_laguerre_c(n: int, alpha) -> Fraction:
    """``c_n(alpha)``; ``lambda = 1 / c_n`` destroys regularity."""
    alpha = rat(alpha)
    if n < 0:
        return Fraction(0)
    if alpha == -1:
        return sum((Fraction(1, k) for k in range(1, n + 2)), Fraction(0))
    return (1 - Fraction(factorial(n + 1)) / pochhammer(2 * alpha + 3, n + 1)) / (2 * alpha + 2)


def _check_perturbed_alpha(alpha: Fraction, n: int):
    if alpha != -1:
        k = -2 * alpha - 3
        if k.denominator == 1 and 0 <= k <= n:
            raise ParameterError(f"alpha = {alpha} makes (2 alpha + 3)_{int(k) + 1} vanish")


def perturbed_laguerre_a(n: int, alpha, lam) -> Fraction:
    """``a_n = (n + 2a + 3)(1 - lam c_n)/(1 - lam c_{n-1})``.

    Equal to the Pochhammer quotient
    ``(lam (n+1)! + (2a-lam+2)(2a+3)_{n+1}) / (lam n! + (2a-lam+2)(2a+3)_n)``
    whenever ``a != -1``, where that quotient degenerates to 0/0.
    """
    alpha, lam = rat(alpha), rat(lam)
    den = 1 - lam * perturbed_laguerre_c(n - 1, alpha)
    if den == 0:
        raise RegularityError(f"a_{n} has a vanishing denominator (lambda = 1/c_{n - 1})", level=n)
    return (n + 2 * alpha + 3) * (1 - lam * perturbed_laguerre_c(n, alpha)) / den


def perturbed_laguerre_a_pochhammer(n: int, alpha, lam) -> Fraction:
    alpha, lam = rat(alpha), rat(lam)
    num = lam * factorial(n + 1) + (2 * alpha - lam + 2) * pochhammer(2 * alpha + 3, n + 1)
    den = lam * factorial(n) + (2 * alpha - lam + 2) * pochhammer(2 * alpha + 3, n)
    if den == 0:
        raise RegularityError(f"a_{n} has a vanishing denominator", level=n)
    return num / den


def perturbed_laguerre_coeffs(alpha, lam, n: int) -> tuple[list, list, list]:
    """``(a_k, beta_k, gamma_{k+1})`` from the closed form.

    The first failure in the order ``a_0, gamma_1, a_1, gamma_2, ...`` is
    raised as :class:`RegularityError`.
    """
    alpha, lam = rat(alpha), rat(lam)
    _check_perturbed_alpha(alpha, n + 1)
    if lam == 0:
        raise RegularityError("lambda = 0 is singular", level=0)
    a, gamma = [], []
    for k in range(n + 1):
        a.append(perturbed_laguerre_a(k, alpha, lam))
        if k < n:
            g = -a[k] * (a[k] - 2 * k - 2 * alpha - 3)
            if g == 0:
                raise RegularityError(f"gamma_{k + 1} vanishes", level=k + 1)
            gamma.append(g)
    beta = [lam] + [2 * k + 2 * alpha + 5 + a[k] - a[k + 1] for k in range(n)]
    return a, beta, gamma


def perturbed_laguerre(alpha, lam, n: int) -> Mps:
    """Laguerre(2a+2) perturbed by a Dirac mass: B_{k+1} = L_{k+1} + a_k L_k.

    Raises :class:`RegularityError` at singular ``lam``.
    """
    alpha, lam = rat(alpha), rat(lam)
    a, beta, gamma = perturbed_laguerre_coeffs(alpha, lam, n)
    lag = laguerre(2 * alpha + 2, n)
    polys = [Poly.one("x")] + [lag[k + 1] + lag[k] * a[k] for k in range(n)]
    rec = Recurrence.three_term(lambda k: beta[k], lambda m: gamma[m - 1],
                                name=f"perturbed_laguerre({alpha},{lam})")
    via_rec = rec.generate(n)
    if tuple(polys) != via_rec.polys:
        raise AssertionError("closed-form recurrence disagrees with the Laguerre combination")
    return Mps(tuple(polys), {"family": "perturbed-laguerre",
                              "params": {"alpha": alpha, "lambda": lam},
                              "a": a, "beta": beta, "gamma": gamma, "recurrence": rec})


def generalized_hermite(mu, n: int) -> Mps:
    """Monic orthogonal polynomials for ``|x|^{2 mu} exp(-x^2)``, built from moments."""
    from .functionals import generalized_hermite_moments, moments_to_recurrence

    mu = rat(mu)
    u = generalized_hermite_moments(mu)
    beta, gamma = moments_to_recurrence(u, n)
    rec = Recurrence.three_term(lambda k: beta[k], lambda m: gamma[m - 1],
                                name=f"generalized_hermite({mu})")
    mps = rec.generate(n)
    return Mps(mps.polys, {"family": "generalized-hermite", "params": {"mu": mu},
                           "recurrence": rec, "beta": beta, "gamma": gamma})


def central_factorial_mps(alpha, n: int) -> Mps:
    return Mps(tuple(monomial_image(k, alpha) for k in range(n + 1)),
               {"family": "central-factorial", "alpha": rat(alpha)})


# -- contiguity relations of the d = 2 reversed Appell family --------------

def contiguity_report(alpha, a1, a2, nmax: int) -> dict:
    """Check the contiguity relations of the d = 2 reversed Appell family and
    of their images, exactly for ``n <= nmax``.

    Returns a dict of named verdicts.  The nine relations are ``R1..R4``,
    ``S1..S4`` and ``xR_S`` (the multiplication relation together with its
    image).  ``R4_as_printed`` records the fourth relation with the index
    placement commonly quoted (left side ``R_n``, right side down to
    ``R_{n-2}``); it is not one of the nine.
    """
    alpha, a1, a2 = rat(alpha), rat(a1), rat(a2)
    _check_alphas((a1, a2, a1 + 1, a2 + 1))
    N = nmax + 1

    def fam(b1, b2):
        return reversed_appell(2, (b1, b2), N)

    base, up2, up1, up12 = fam(a1, a2), fam(a1, a2 + 1), fam(a1 + 1, a2), fam(a1 + 1, a2 + 1)
    imgs = {key: m.image(alpha) for key, m in
            (("base", base), ("up2", up2), ("up1", up1), ("up12", up12))}
    up12_next = up12.image(alpha + 1)

    def rel1(P, Q):
        return all(P[n + 1] == Q[n + 1] + Q[n] * ((n + 1) * (n + a1 + 1)) for n in range(nmax))

    def rel2(P, Q):
        return all(P[n + 1] == Q[n + 1] + Q[n] * ((n + 1) * (n + a2 + 1)) for n in range(nmax))

    def rel3(P, basis_of_x):
        ok = True
        for n in range(nmax + 1):
            rhs = P[0] * 0
            for k in range(n + 1):
                rhs = rhs + P[k] * (comb(n, k) * pochhammer(a1 + 1, n) * pochhammer(a2 + 1, n)
                                    / (pochhammer(a1 + 1, k) * pochhammer(a2 + 1, k)))
            ok = ok and rhs == basis_of_x(n)
        return ok

    def rel4(P, Q):
        ok = True
        for n in range(nmax):
            rhs = Q[n + 1] + Q[n] * ((n + 1) * (2 * n + 3 + a1 + a2))
            if n >= 1:
                rhs = rhs + Q[n - 1] * (n * (n + 1) * (n + 1 + a1) * (n + 1 + a2))
            ok = ok and P[n + 1] == rhs
        return ok

    def rel4_printed(P, Q):
        ok = True
        for n in range(nmax + 1):
            rhs = Q[n]
            if n >= 1:
                rhs = rhs + Q[n - 1] * ((n + 1) * (2 * n + 3 + a1 + a2))
            if n >= 2:
                rhs = rhs + Q[n - 2] * (n * (n + 1) * (n + 1 + a1) * (n + a2 + 1))
            ok = ok and P[n] == rhs
        return ok

    z_shift = Poly(((alpha + 1) ** 2, 1), "z")
    xr = all(up12[n].shift_degree(1) == base[n + 1] + base[n] * ((n + a1 + 1) * (n + a2 + 1))
             for n in range(nmax))
    xs = all(z_shift * up12_next[n] == imgs["base"][n + 1] + imgs["base"][n] * ((n + a1 + 1) * (n + a2 + 1))
             for n in range(nmax))
    return {
        "R1": rel1(base, up2),
        "R2": rel2(base, up1),
        "R3": rel3(base, lambda n: Poly.monomial(n, "x")),
        "R4": rel4(base, up12),
        "S1": rel1(imgs["base"], imgs["up2"]),
        "S2": rel2(imgs["base"], imgs["up1"]),
        "S3": rel3(imgs["base"], lambda n: monomial_image(n, alpha)),
        "S4": rel4(imgs["base"], imgs["up12"]),
        "xR_S": xr and xs,
        "R4_as_printed": rel4_printed(base, up12),
    }


NINE_CONTIGUITY = ("R1", "R2", "R3", "R4", "S1", "S2", "S3", "S4", "xR_S")


def contiguity_checks(alpha, a1, a2, nmax: int) -> bool:
    """True when all nine contiguity relations hold for ``n <= nmax``."""
    rep = contiguity_report(alpha, a1, a2, nmax)
    return all(rep[k] for k in NINE_CONTIGUITY)
