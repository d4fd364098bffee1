"""Linear functionals on polynomials given by exact moment sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .exact import Poly, expand_in_basis, pochhammer, rat


class HankelSingularity(ArithmeticError):
    """The functional is not regular: ``<u, Q_k^2> = 0`` at ``level = k``."""

    def __init__(self, level: int):
        super().__init__(f"Hankel determinant H_{level + 1} vanishes (regularity fails at k={level})")
        self.level = level


class MomentFunctional:
    """Linear form determined by ``n -> (u)_n``.

    Moments are cached; ``limit`` bounds the available moments when the
    generator is only known on a finite range.
    """

    def __init__(self, moments: Callable[[int], Fraction], label: str = "",
                 limit: int | None = None):
        self._gen = moments
        self.label = label
        self.limit = limit
        self._cache: dict[int, Fraction] = {}

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment index must be nonnegative")
        if self.limit is not None and n > self.limit:
            raise IndexError(f"moment {n} beyond the known range {self.limit}")
        if n not in self._cache:
            self._cache[n] = rat(self._gen(n))
        return self._cache[n]

    def __call__(self, p: Poly) -> Fraction:
        """``<u, p>``."""
        total = Fraction(0)
        for k, c in enumerate(p.coeffs):
            if c:
                total += c * self.moment(k)
        return total

    def moments(self, n: int) -> list[Fraction]:
        return [self.moment(k) for k in range(n)]

    def times(self, p: Poly) -> "MomentFunctional":
        """The form ``p u``: ``<p u, f> = <u, p f>``."""
        return MomentFunctional(lambda n: self(p.shift_degree(n)), f"({p})*{self.label}",
                                None if self.limit is None else self.limit - max(p.degree, 0))

    def __repr__(self):
        return f"MomentFunctional({self.label!r})"


def from_list(values: Sequence, label: str = "") -> MomentFunctional:
    vals = [rat(v) for v in values]
    return MomentFunctional(lambda n: vals[n], label, limit=len(vals) - 1)


# -- moment sequences of the families used here --------------------------

def laguerre_moments(a1) -> MomentFunctional:
    a1 = rat(a1)
    return MomentFunctional(lambda n: pochhammer(a1 + 1, n), f"laguerre({a1})")


def hermite_moments() -> MomentFunctional:
    """Normalised moments of ``exp(-x^2)``."""
    return MomentFunctional(lambda n: Fraction(0) if n % 2 else pochhammer(Fraction(1, 2), n // 2),
                            "hermite")


def generalized_hermite_moments(mu) -> MomentFunctional:
    """Normalised moments of ``|x|^{2 mu} exp(-x^2)``."""
    mu = rat(mu)
    return MomentFunctional(lambda n: Fraction(0) if n % 2 else pochhammer(mu + Fraction(1, 2), n // 2),
                            f"generalized_hermite({mu})")


def bateman_v0(a1, a2) -> MomentFunctional:
    """First functional of the d = 2 reversed Appell dual sequence: ``(a1+1)_n (a2+1)_n``."""
    a1, a2 = rat(a1), rat(a2)
    return MomentFunctional(lambda n: pochhammer(a1 + 1, n) * pochhammer(a2 + 1, n),
                            f"v0({a1},{a2})")


def bateman_v1(a1, a2) -> MomentFunctional:
    """``<v1, f> = <v0, f'> / ((a1+1)(a2+1))``, i.e. the integral form integrated by parts."""
    a1, a2 = rat(a1), rat(a2)

    def mom(n):
        if n == 0:
            return Fraction(0)
        return n * pochhammer(a1 + 1, n - 1) * pochhammer(a2 + 1, n - 1) / ((a1 + 1) * (a2 + 1))

    return MomentFunctional(mom, f"v1({a1},{a2})")


def bateman_u1(a1, a2) -> MomentFunctional:
    """Second dual functional of the d = 2 reversed Appell sequence:
    ``<u1, f> = <v0(a1+1, a2+1), f'>``, moments ``n (a1+2)_{n-1} (a2+2)_{n-1}``.

    Differs from :func:`bateman_v1` by one unit in the weight exponent.
    """
    a1, a2 = rat(a1), rat(a2)
    return MomentFunctional(
        lambda n: Fraction(0) if n == 0 else n * pochhammer(a1 + 2, n - 1) * pochhammer(a2 + 2, n - 1),
        f"u1({a1},{a2})")


def perturbed_laguerre_moments(alpha, lam) -> MomentFunctional:
    """``lam x^{-1} w + delta`` with ``w`` the Laguerre form of parameter ``2 alpha + 2``."""
    alpha, lam = rat(alpha), rat(lam)
    return MomentFunctional(lambda n: Fraction(1) if n == 0 else lam * pochhammer(2 * alpha + 3, n - 1),
                            f"perturbed_laguerre({alpha},{lam})")


# -- Hankel determinants and the moment-to-recurrence map ----------------

def bareiss_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free elimination with row pivoting."""
    m = [list(map(rat, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hankel(u: MomentFunctional, n: int) -> Fraction:
    """``H_n = det((u)_{i+j})_{0 <= i, j < n}``."""
    return bareiss_det([[u.moment(i + j) for j in range(n)] for i in range(n)])


def regularity_level(u: MomentFunctional, nmax: int) -> int | None:
    """First ``k <= nmax`` with ``H_{k+1} = 0``, or None."""
    for k in range(nmax + 1):
        if hankel(u, k + 1) == 0:
            return k
    return None


def moments_to_recurrence(u: MomentFunctional, nmax: int) -> tuple[list, list]:
    """Exact Stieltjes procedure.

    Returns ``(beta, gamma)`` with ``beta[k] = beta_k`` for ``k <= nmax`` and
    ``gamma[k-1] = gamma_k`` for ``1 <= k <= nmax``.  Raises
    :class:`HankelSingularity` when ``<u, Q_k^2>`` vanishes.
    """
    x = Poly((0, 1), "x")
    q_prev, q = Poly.zero("x"), Poly.one("x")
    norm_prev = None
    beta, gamma = [], []
    for k in range(nmax + 1):
        sq = q * q
        norm = u(sq)
        if norm == 0:
            raise HankelSingularity(k)
        b = u(sq.shift_degree(1)) / norm
        beta.append(b)
        if k > 0:
            g = norm / norm_prev
            gamma.append(g)
            q_next = (x - b) * q - q_prev * g
        else:
            q_next = (x - b) * q
        q_prev, q, norm_prev = q, q_next, norm
    return beta, gamma


def gram_check(u: MomentFunctional, B, nmax: int) -> bool:
    """``<u, B_n B_m>`` vanishes off the diagonal and not on it, for ``n, m <= nmax``."""
    for n in range(nmax + 1):
        for m in range(n + 1):
            v = u(B[n] * B[m])
            if (v == 0) == (n == m):
                return False
    return True


def dual_functional(B, k: int) -> MomentFunctional:
    """``u_k`` with ``<u_k, B_n> = delta_{k,n}``: moments read off the expansion of ``x^m``."""
    def mom(m):
        if m >= len(B):
            raise IndexError("prefix too short for this moment")
        return expand_in_basis(Poly.monomial(m, B.var), B.polys[: m + 1])[k] if m >= k else Fraction(0)

    return MomentFunctional(mom, f"dual_{k}", limit=len(B) - 1)


def dual_vector_check(B, U: Sequence[MomentFunctional], d: int, nmax: int) -> bool:
    """d-orthogonality against ``U = (u_0, ..., u_{d-1})``.

    ``<u_k, x^m B_n> = 0`` for ``n >= md + k + 1`` and ``!= 0`` at ``n = md + k``.
    """
    if len(U) != d:
        raise ValueError("need exactly d functionals")
    for k, u in enumerate(U):
        m = 0
        while m * d + k <= nmax:
            for n in range(m * d + k, nmax + 1):
                v = u(B[n].shift_degree(m))
                if n == m * d + k and v == 0:
                    return False
                if n > m * d + k and v != 0:
                    return False
            m += 1
    return True


# -- Pearson pairs -------------------------------------------------------

@dataclass(frozen=True)
class PearsonPair:
    """``D(phi u) + psi u = 0`` with ``phi`` monic."""

    phi: Poly
    psi: Poly
    reductions: tuple = field(default=(), compare=False)

    @property
    def s(self) -> int:
        return max(self.phi.degree - 2, self.psi.degree - 1)

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "psi": self.psi.to_json(), "class": self.s,
                "reduced_at": [str(c) for c in self.reductions]}


def pearson_check(u: MomentFunctional, pair: PearsonPair, nmax: int) -> bool:
    """``-n <u, phi x^{n-1}> + <u, psi x^n> = 0`` for ``n <= nmax``."""
    for n in range(nmax + 1):
        val = u(pair.psi.shift_degree(n))
        if n:
            val -= n * u(pair.phi.shift_degree(n - 1))
        if val != 0:
            return False
    return True


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.extend({k, n // k})
        k += 1
    return out


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, by the rational root test."""
    if p.degree <= 0:
        return []
    roots = []
    q = p
    while q.coeff(0) == 0 and q.degree > 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        q = Poly(q.coeffs[1:], q.var)
    if q.degree <= 0:
        return roots
    lcm = 1
    for c in q.coeffs:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in q.coeffs]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def class_reduce(pair: PearsonPair, u: MomentFunctional) -> PearsonPair:
    """Divide out rational roots ``c`` of ``phi`` while
    ``|phi'(c) + psi(c)| + |<u, theta_c^2 phi + theta_c psi>| = 0``."""
    phi, psi = pair.phi, pair.psi
    done = list(pair.reductions)
    changed = True
    while changed and phi.degree >= 1:
        changed = False
        for c in rational_roots(phi):
            if phi.deriv()(c) + psi(c) != 0:
                continue
            tphi = phi.theta(c)
            candidate = tphi.theta(c) + psi.theta(c)
            if u(candidate) != 0:
                continue
            phi, psi = tphi, candidate
            done.append(c)
            changed = True
            break
    return PearsonPair(phi, psi, tuple(done))


def affine_moments(u: MomentFunctional, a, b) -> MomentFunctional:
    """Moments of ``(h_{1/a} o tau_{-b}) u``: ``<u, ((x - b)/a)^k>``."""
    a, b = rat(a), rat(b)
    if a == 0:
        raise ValueError("a must be nonzero")

    def mom(k):
        return sum((comb(k, j) * (-b) ** (k - j) * u.moment(j) for j in range(k + 1)),
                   Fraction(0)) / a ** k

    return MomentFunctional(mom, f"affine({u.label},{a},{b})")


def affine_pair(pair: PearsonPair, a, b) -> PearsonPair:
    """``(a^{-t} phi(ax+b), a^{1-t} psi(ax+b))`` with ``t = deg phi``."""
    a, b = rat(a), rat(b)
    if a == 0:
        raise ValueError("a must be nonzero")
    t = pair.phi.degree
    return PearsonPair(pair.phi.compose_affine(a, b) / a ** t,
                       pair.psi.compose_affine(a, b) * a ** (1 - t))


def affine_transform(obj, a, b):
    """Affine change of variable applied to a functional or a Pearson pair."""
    if isinstance(obj, PearsonPair):
        return affine_pair(obj, a, b)
    if isinstance(obj, MomentFunctional):
        return affine_moments(obj, a, b)
    raise TypeError("expected MomentFunctional or PearsonPair")


def x_inverse_delta(w: MomentFunctional, lam) -> MomentFunctional:
    """``lam x^{-1} w + delta``: ``(u)_0 = 1`` and ``(u)_n = lam (w)_{n-1}``."""
    lam = rat(lam)
    return MomentFunctional(lambda n: Fraction(1) if n == 0 else lam * w.moment(n - 1),
                            f"{lam}/x*{w.label}+delta")
