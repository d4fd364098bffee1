"""Structural relations, d-orthogonality certification and the classification
of orthogonal sequences whose KL_alpha image is d-orthogonal.

The moment-functional layer lives in :mod:`klpoly.functionals` and is
re-exported here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly, expand_in_basis, rat
from .functionals import (  # noqa: F401  (re-exported)
    HankelSingularity,
    MomentFunctional,
    PearsonPair,
    affine_moments,
    affine_pair,
    affine_transform,
    bareiss_det,
    bateman_u1,
    bateman_v0,
    bateman_v1,
    class_reduce,
    dual_functional,
    dual_vector_check,
    from_list,
    generalized_hermite_moments,
    gram_check,
    hankel,
    hermite_moments,
    laguerre_moments,
    moments_to_recurrence,
    pearson_check,
    perturbed_laguerre_moments,
    rational_roots,
    regularity_level,
    x_inverse_delta,
)
from .sequences import Mps, Recurrence, RegularityError
from .transform import kl_forward


@dataclass(frozen=True)
class StructuralRelation:
    """``S_{n+1} = (v - zeta_n) S_n - sum_{nu < n} a_{n,nu} S_nu`` for ``n < nmax``.

    ``detected_d`` is certified only over the rows present (``n <= nmax - 1``);
    None means no order fits within that range.
    """

    zeta: tuple
    a: tuple  # a[n][nu], nu < n
    detected_d: int | None
    var: str = "z"
    note: str = ""

    @property
    def nmax(self) -> int:
        return len(self.zeta)

    def coeff(self, n: int, nu: int) -> Fraction:
        return self.a[n][nu] if 0 <= nu < n else Fraction(0)

    def reproduces(self, S) -> bool:
        v = Poly((0, 1), self.var)
        for n in range(self.nmax):
            rhs = (v - self.zeta[n]) * S[n]
            for nu in range(n):
                if self.a[n][nu]:
                    rhs = rhs - S[nu] * self.a[n][nu]
            if rhs != S[n + 1]:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "zeta": [str(z) for z in self.zeta],
            "a": [[str(c) for c in row] for row in self.a],
            "detected_d": self.detected_d,
            "rows": self.nmax,
            "note": self.note,
        }


def detect_order(a: tuple) -> tuple[int | None, str]:
    """Smallest ``d`` with ``a_{n,nu} = 0`` for ``nu <= n-d-1`` and ``a_{n,n-d} != 0``
    for every ``n >= d`` among the available rows."""
    rows = len(a)
    width = 0
    any_nonzero = False
    for n in range(rows):
        nz = [nu for nu in range(n) if a[n][nu]]
        if nz:
            any_nonzero = True
            width = max(width, n - nz[0])
    if not any_nonzero:
        return None, "all connection coefficients vanish"
    d = width
    if d >= rows - 1:
        return None, f"range too short to certify order {d}"
    for n in range(d, rows):
        if a[n][n - d] == 0:
            return None, f"lowest coefficient vanishes at n={n} for order {d}"
    return d, f"certified for n < {rows}"


def extract_structural(S) -> StructuralRelation:
    """Read ``zeta_n`` and ``a_{n,nu}`` off a graded monic prefix."""
    polys = S.polys if isinstance(S, Mps) else tuple(S)
    if len(polys) < 3:
        raise ValueError("need at least three polynomials")
    var = polys[0].var
    zeta, rows = [], []
    for n in range(len(polys) - 1):
        r = polys[n + 1] - polys[n].shift_degree(1)
        coeffs = expand_in_basis(r, polys[: n + 1]) if not r.is_zero() else [Fraction(0)] * (n + 1)
        coeffs = list(coeffs) + [Fraction(0)] * (n + 1 - len(coeffs))
        zeta.append(-coeffs[n])
        rows.append(tuple(-c for c in coeffs[:n]))
    a = tuple(rows)
    d, note = detect_order(a)
    return StructuralRelation(tuple(zeta), a, d, var, note)


def image_structural(B, alpha) -> StructuralRelation:
    return extract_structural(Mps(tuple(kl_forward(p, alpha) for p in B)))


# -- connection coefficients from the three-term data ---------------------

def connection_coeffs(beta, gamma, alpha, nmax: int, printed: bool = False) -> StructuralRelation:
    """Structural relation of the image computed from ``beta_n``, ``gamma_n`` alone.

    ``beta(n)`` for ``n >= 0`` and ``gamma(n)`` for ``n >= 1``.  Uses

        zeta_n = beta_n - (alpha+n+1)^2
        a_{n,n-1} = gamma_n + (2n+2alpha+1) b_{n,n-1}
        a_{n,n-k} = -(2n+2alpha+1) b_{n,n-1} b_{n-1,n-k} + k(2alpha+2n-k+2) b_{n,n-k}
                    - sum_{j=2}^{k-1} a_{n,n-j} b_{n-j,n-k}

    where ``b_{n,nu}`` is the coefficient of ``x^nu`` in ``B_n``.  With
    ``printed=True`` the constant ``2n+2alpha-1`` is used in the ``a_{n,n-1}``
    formula instead, which does not reproduce the image.
    """
    alpha = rat(alpha)
    rec = Recurrence.three_term(beta, gamma)
    B = rec.generate(nmax, check=False)

    def b(n, nu):
        return B[n].coeff(nu) if 0 <= nu <= n else Fraction(0)

    zeta, rows = [], []
    for n in range(nmax):
        zeta.append(rat(beta(n)) - (alpha + n + 1) ** 2)
        row = [Fraction(0)] * n
        if n >= 1:
            c = 2 * n + 2 * alpha + 1
            c_top = c - 2 if printed else c
            row[n - 1] = rat(gamma(n)) + c_top * b(n, n - 1)
            for k in range(2, n + 1):
                val = -c * b(n, n - 1) * b(n - 1, n - k) + k * (2 * alpha + 2 * n - k + 2) * b(n, n - k)
                for j in range(2, k):
                    val -= row[n - j] * b(n - j, n - k)
                row[n - k] = val
        rows.append(tuple(row))
    a = tuple(rows)
    d, note = detect_order(a)
    return StructuralRelation(tuple(zeta), a, d, "z", note)


# -- perturbation by x^{-1} and a Dirac mass ------------------------------

@dataclass
class MaroniResult:
    mps: Mps
    a: list
    beta: list
    gamma: list  # gamma[k] = gamma^P_{k+1}
    singular_values: list  # lambda_{n+1}, n < nmax


def maroni_perturbation(W: Mps, w: MomentFunctional, lam, nmax: int) -> MaroniResult:
    """MOPS of ``lam x^{-1} w + delta`` from the MOPS ``W`` of ``w``.

    ``P_{n+1} = W_{n+1} + a_n W_n`` with
    ``a_n = -(W_{n+1}(0) + lam <w, theta_0 W_{n+1}>) / (W_n(0) + lam <w, theta_0 W_n>)``;
    ``beta^P_n = beta^W_n + a_{n-1} - a_n`` and ``gamma^P_{n+1} = -a_n (a_n - beta^W_n)``.
    The result is cross-checked against the moment route.
    """
    lam = rat(lam)
    if len(W) < nmax + 2:
        raise ValueError("W prefix too short")
    if lam == 0:
        raise RegularityError("lambda = 0 is singular", level=0)
    wb = extract_structural(W)

    def corrected(k):
        return W[k](0) + lam * w(W[k].theta(0))

    a = []
    for n in range(nmax + 1):
        den = corrected(n)
        if den == 0:
            raise RegularityError(f"singular lambda: denominator of a_{n} vanishes", level=n)
        a.append(-corrected(n + 1) / den)
    beta = [wb.zeta[n] + (a[n - 1] if n else 0) - a[n] for n in range(nmax + 1)]
    gamma = [-a[n] * (a[n] - wb.zeta[n]) for n in range(nmax)]
    for k, g in enumerate(gamma):
        if g == 0:
            raise RegularityError(f"gamma_{k + 1} vanishes", level=k + 1)
    polys = (Poly.one(W.var),) + tuple(W[n + 1] + W[n] * a[n] for n in range(nmax))
    singular = []
    for n in range(nmax):
        t = w(W[n + 1].theta(0))
        singular.append(-W[n + 1](0) / t if t else None)
    mb, mg = moments_to_recurrence(x_inverse_delta(w, lam), nmax)
    if mb != beta or mg != gamma:
        raise AssertionError("perturbation formulas disagree with the moment route")
    mps = Mps(polys, {"family": "maroni", "lambda": lam})
    return MaroniResult(mps, a, beta, gamma, singular)


def finite_type_check(B, V, nmax: int) -> dict:
    """Relations between the MOPS ``B`` of ``u`` and ``V`` of ``v = x u / lam``.

    ``x V_n = B_{n+1} - (B_{n+1}(0)/B_n(0)) B_n`` and
    ``B_{n+1} = V_{n+1} - (B_n(0)/B_{n+1}(0)) gamma^B_{n+1} V_n``; the first is also
    evaluated with ``V_{n+1}`` on the left as it is sometimes quoted.
    """
    gB = extract_structural(B)
    first = second = quoted = True
    for n in range(nmax):
        if B[n](0) == 0 or B[n + 1](0) == 0:
            return {"x_V_n": False, "B_from_V": False, "x_V_n_plus_1": False,
                    "note": f"B_{n}(0) or B_{n+1}(0) vanishes"}
        r = B[n + 1] - B[n] * (B[n + 1](0) / B[n](0))
        first = first and V[n].shift_degree(1) == r
        quoted = quoted and V[n + 1].shift_degree(1) == r
        g = gB.coeff(n + 1, n)
        second = second and B[n + 1] == V[n + 1] - V[n] * (B[n](0) / B[n + 1](0) * g)
    return {"x_V_n": first, "B_from_V": second, "x_V_n_plus_1": quoted}


# -- classification -------------------------------------------------------

@dataclass
class ClassificationReport:
    case: str  # "a", "b", "c" or "none"
    rho: Poly | None
    N: Fraction | None
    d: int | None
    s: int | None
    pair: PearsonPair
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "rho": self.rho.to_json() if self.rho is not None else None,
            "N": str(self.N) if self.N is not None else None,
            "d": self.d,
            "class": self.s,
            "pair": self.pair.to_json(),
            "flags": {k: (v if isinstance(v, (bool, type(None), int)) else str(v))
                      for k, v in self.flags.items()},
        }


def _half_integer_hit(value: Fraction, start: int, offset) -> bool:
    """Whether ``value = -(n + offset) / 2`` for some integer ``n >= start``
    (``offset`` scaled: the constraint is ``alpha != -(n+offset)/2``)."""
    n = -2 * value - offset
    return n.denominator == 1 and n >= start


def classify(pair: PearsonPair, alpha, u: MomentFunctional, check_nmax: int = 12) -> ClassificationReport:
    """Match the (reduced) Pearson pair of ``u`` against cases a, b, c.

    The partition follows the proof: reduce first, then read the case off
    ``phi in {x^2, x, 1}``.
    """
    alpha = rat(alpha)
    flags: dict = {"pearson": pearson_check(u, pair, check_nmax)}
    red = class_reduce(pair, u)
    flags["reduced_at"] = ",".join(str(c) for c in red.reductions) or "none"
    phi, psi = red.phi, red.psi
    x = Poly((0, 1), "x")
    none = ClassificationReport("none", None, None, None, red.s, red, flags)
    if not flags["pearson"] or psi.degree < 1:
        return none

    if phi == x * x:
        if psi.coeff(0) != 0:
            flags["psi(0)=0"] = False
            return none
        q = Poly(psi.coeffs[1:], "x")
        N = q.lc
        rho = (q + (3 + 2 * alpha)) / N
        flags["rho(0)=0"] = rho.coeff(0) == 0
        if not flags["rho(0)=0"] or rho.degree < 1:
            return none
        flags["<u,N rho-(2+2a)> != 0"] = u(rho * N - (2 + 2 * alpha)) != 0
        flags["alpha != -(n+3)/2"] = not _half_integer_hit(alpha, 0, 3)
        case, s_off = "a", 0
    elif phi == x:
        N = psi.lc
        rho = (psi + (2 + 2 * alpha)) / N
        guard = (rho.coeff(0) * N - (1 + 2 * alpha) != 0) or (u(rho.theta(0)) != 0)
        flags["proof guard |N rho(0)-(1+2a)|+|<u,theta_0 rho>| != 0"] = guard
        stmt = u(rho) != (2 + 2 * alpha) / N
        flags["statement <u,rho> != (2+2a)/N"] = stmt
        flags["statement/proof disagree"] = stmt != guard
        flags["alpha != -n/2-1"] = not _half_integer_hit(alpha, 1, 2)
        if not guard:
            return none
        case, s_off = "b", 1
    elif phi == Poly.one("x"):
        N = psi.lc
        rho = (psi.shift_degree(1) + (1 + 2 * alpha)) / N
        flags["N rho(0) = 1+2a"] = rho.coeff(0) * N == 1 + 2 * alpha
        flags["<u,theta_0 rho> = 0"] = u(rho.theta(0)) == 0
        flags["<u,N rho-(2+2a)> = 0"] = u(rho * N - (2 + 2 * alpha)) == 0
        flags["d >= 4"] = 2 * rho.degree >= 4
        if not flags["d >= 4"]:
            return none
        case, s_off = "c", 2
    else:
        return none
    d = 2 * rho.degree
    return ClassificationReport(case, rho, N, d, d // 2 - s_off, red, flags)


# -- the differential relation satisfied by B_n ---------------------------

def _lhs_printed(b: Poly, rho: Poly, N, alpha) -> Poly:
    x = Poly((0, 1), "x")
    brace = rho * N * (rho * N - (2 + 2 * alpha)) - x * rho.deriv() * N - x + (1 + 2 * alpha)
    return b.deriv().deriv().shift_degree(2) + x * (rho * N - (3 + 2 * alpha)) * b.deriv() - brace * b


def _lhs_derived(b: Poly, rho: Poly, N, alpha) -> Poly:
    x = Poly((0, 1), "x")
    brace = rho * N * (rho * N - (2 + 2 * alpha)) - x * rho.deriv() * N - x + (1 + 2 * alpha)
    return b.deriv().deriv().shift_degree(2) - x * (rho * (2 * N) - (3 + 2 * alpha)) * b.deriv() + brace * b


def theorem_relation_report(B: Mps, report: ClassificationReport, alpha, nmax: int) -> dict:
    """Expand the differential relation for ``B_n`` in the ``B`` basis.

    Two forms are evaluated for ``n <= nmax``:

    * ``printed``: ``x^2 B'' + x(N rho - (3+2a)) B' - {..} B``;
    * ``derived``: ``x^2 B'' - x(2N rho - (3+2a)) B' + {..} B``, obtained by
      eliminating ``A_0`` and ``A_1`` between the two Pearson equations,

    where ``{..} = N rho (N rho - (2+2a)) - N x rho' - x + (1+2a)``.  Both are
    compared with ``-sum_{nu=n-1}^{n+d} rho_{n,nu} B_nu``: support, the lag 0
    entry against ``zeta_n - a^2`` and ``zeta_n + a^2``, and the lag -1 entry
    against ``gamma_1`` and ``gamma_n``.  For the derived form the upper
    entries are also compared with ``(k_n / k_nu) a_{nu,n}`` from the image.
    """
    alpha = rat(alpha)
    if report.case == "none":
        raise ValueError("classification did not match a case")
    d, rho, N = report.d, report.rho, report.N
    need = nmax + d + 2
    if len(B) < need:
        raise ValueError(f"B prefix must have at least {need} members")
    Bs = extract_structural(B)
    gamma = [Fraction(0)] + [Bs.coeff(n, n - 1) for n in range(1, len(B) - 1)]
    norms = [Fraction(1)]
    for n in range(1, len(gamma)):
        norms.append(norms[-1] * gamma[n])
    img = image_structural(B, alpha)
    out = {}
    for form, lhs_fn in (("printed", _lhs_printed), ("derived", _lhs_derived)):
        support_ok = lag0_minus = lag0_plus = lagm1_g1 = lagm1_gn = upper_ok = True
        rows = []
        for n in range(nmax + 1):
            lhs = lhs_fn(B[n], rho, N, alpha)
            coeffs = [-c for c in expand_in_basis(lhs, B.polys[: lhs.degree + 1])] if not lhs.is_zero() else []
            support = [nu for nu, c in enumerate(coeffs) if c]
            inside = all(n - 1 <= nu <= n + d for nu in support)
            support_ok = support_ok and inside
            c0 = coeffs[n] if n < len(coeffs) else Fraction(0)
            zeta = Bs.zeta[n] - (alpha + n + 1) ** 2
            lag0_minus = lag0_minus and c0 == zeta - alpha ** 2
            lag0_plus = lag0_plus and c0 == zeta + alpha ** 2
            if n >= 1:
                cm1 = coeffs[n - 1] if n - 1 < len(coeffs) else Fraction(0)
                lagm1_g1 = lagm1_g1 and cm1 == gamma[1]
                lagm1_gn = lagm1_gn and cm1 == gamma[n]
            for nu in range(n + 1, n + d + 1):
                cu = coeffs[nu] if nu < len(coeffs) else Fraction(0)
                expected = norms[n] / norms[nu] * img.coeff(nu, n)
                upper_ok = upper_ok and cu == expected
            rows.append({"n": n, "support": support})
        out[form] = {
            "support_in_window": support_ok,
            "lag0_equals_zeta_minus_alpha2": lag0_minus,
            "lag0_equals_zeta_plus_alpha2": lag0_plus,
            "lag_minus1_equals_gamma_1": lagm1_g1,
            "lag_minus1_equals_gamma_n": lagm1_gn,
            "upper_entries_match_image": upper_ok,
            "rows": rows,
        }
    return out


def theorem_diff_relation_check(B: Mps, report: ClassificationReport, alpha, nmax: int,
                                form: str = "printed") -> bool:
    """Check the differential relation for ``B_n``, ``n <= nmax``.

    ``form="printed"`` asks for support within ``[n-1, n+d]`` and lag 0 entry
    ``zeta_n - alpha^2``.  ``form="derived"`` asks for the same support, lag 0
    entry ``zeta_n + alpha^2``, lag -1 entry ``gamma_n`` and upper entries
    matching the image's structural relation.
    """
    r = theorem_relation_report(B, report, alpha, nmax)[form]
    if form == "printed":
        return r["support_in_window"] and r["lag0_equals_zeta_minus_alpha2"]
    return (r["support_in_window"] and r["lag0_equals_zeta_plus_alpha2"]
            and r["lag_minus1_equals_gamma_n"] and r["upper_entries_match_image"])
