"""Named batches of checks used by the command line ``verify`` command.

Each suite returns a list of :class:`Check`.  A check carries a pass flag and
a JSON-ready payload.  Checks that record how a commonly quoted formula fares
against the corrected one keep that verdict in ``info`` and do not affect the
pass flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly, TriMatrix, format_rat
from .functionals import (
    PearsonPair,
    bateman_u1,
    bateman_v0,
    bateman_v1,
    dual_vector_check,
    generalized_hermite_moments,
    hermite_moments,
    laguerre_moments,
    moments_to_recurrence,
    perturbed_laguerre_moments,
)
from .numeric import (
    QuadConfig,
    bessel_k_imag,
    cdh_weight_check,
    eigen_residual,
    kl_numeric_check,
    parseval_gamma_check,
)
from .orthogonality import (
    classify,
    connection_coeffs,
    extract_structural,
    image_structural,
    theorem_relation_report,
)
from .sequences import (
    RegularityError,
    appell_image_recurrence,
    cdh_monic,
    contiguity_report,
    generalized_hermite,
    hermite,
    hermite_type,
    laguerre,
    perturbed_laguerre,
    perturbed_laguerre_c,
    reversed_appell,
    reversed_appell_image_recurrence,
    NINE_CONTIGUITY,
)
from .stirling import build_tables, mixed_image, pn_alpha, substitution_row, w_power_basis
from .transform import (
    delta_lemma_checks,
    delta_op,
    kl_forward,
    kl_inverse,
    kl_shift_check,
    monomial_image,
    op_L_power,
    op_M_chain,
)

ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(1))
X = Poly((0, 1), "x")


@dataclass
class Check:
    name: str
    passed: bool
    values: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.name, "status": "pass" if self.passed else "fail"}
        if self.values:
            out["values"] = self.values
        if self.info:
            out["info"] = self.info
        return out


def sample_poly(deg: int, seed: int) -> Poly:
    """Deterministic rational test polynomial of the given degree."""
    coeffs = [Fraction((7 * k + 3 * seed) % 11 - 5, 1 + (k + seed) % 4) for k in range(deg)]
    return Poly(tuple(coeffs) + (Fraction(1),), "x")


# -- identities ----------------------------------------------------------

def identities(nmax: int = 12) -> list[Check]:
    out = []
    deg = max(nmax, 1)
    iso = all(kl_inverse(kl_forward(sample_poly(d, 1), a), a) == sample_poly(d, 1)
              for a in ALPHAS for d in range(deg + 1))
    out.append(Check("isomorphism", iso, {"max_degree": deg}))
    mom = all(monomial_image(n, 0)(0) == math.factorial(n) ** 2 for n in range(deg + 1))
    out.append(Check("moments_at_tau_0", mom, {"max_n": deg}))
    st = True
    for a in ALPHAS:
        tab = build_tables(deg, a)
        st = st and tab.t @ tab.T == TriMatrix.identity(deg + 1)
        st = st and all(substitution_row(n, a) == list(tab.t.rows[n]) for n in range(deg + 1))
        st = st and all(kl_forward(pn_alpha(n, a, tab), a) == w_power_basis(n, a)
                        for n in range(min(deg, 8) + 1))
    out.append(Check("stirling_tables", st))
    mixed = all(mixed_image(m, n, a) is not None for a in ALPHAS for m in range(3) for n in range(4))
    out.append(Check("mixed_image", mixed))
    eig = all(kl_forward(op_L_power(sample_poly(d, 2), a, m), a)
              == w_power_basis(m, a) * kl_forward(sample_poly(d, 2), a) * (-1) ** m
              for a in ALPHAS for m in range(5) for d in range(0, 9, 2))
    out.append(Check("operator_eigen_identity", eig))
    shift = all(kl_shift_check(sample_poly(d, 3), n, a) for a in ALPHAS
                for n in range(7) for d in range(0, 9, 4))
    out.append(Check("shift_factorisation", shift))
    chain = all(kl_forward(op_M_chain(sample_poly(d, 4), a, m), a + m)
                == kl_forward(sample_poly(d, 4), a) * (-1) ** m
                for a in ALPHAS for m in range(4) for d in range(7))
    out.append(Check("chain_identity", chain))
    dl = all(delta_lemma_checks(Poly.monomial(n, "x"), a) for a in ALPHAS for n in range(11))
    dl = dl and all(delta_lemma_checks(sample_poly(d, 5), a) for a in ALPHAS for d in range(9))
    out.append(Check("delta_lemmas", dl))
    dfac = all(delta_op(monomial_image(n, a)) == monomial_image(n - 1, a + Fraction(1, 2)) * n
               for a in ALPHAS for n in range(1, 13))
    out.append(Check("delta_central_factorials", dfac))
    return out


# -- families ------------------------------------------------------------

def families(nmax: int = 12) -> list[Check]:
    out = []
    n = max(nmax, 4)
    # hermite type: Appell property, symmetry, image recurrence
    ok_appell = True
    for d in (1, 2, 3):
        H = hermite_type(d, n + 1)
        ok_appell = ok_appell and all(H[k + 1].deriv() == H[k] * (k + 1) for k in range(n))
        ok_appell = ok_appell and all(c == 0 for k in range(n + 1)
                                      for e, c in enumerate(H[k].coeffs) if (k - e) % (d + 1))
    out.append(Check("hermite_type_appell_symmetric", ok_appell))
    rec_ok, printed_ok = True, True
    for d in (1, 2, 3):
        H = hermite_type(d, n)
        for a in ALPHAS:
            img = H.image(a).polys
            rec_ok = rec_ok and appell_image_recurrence(d, a).generate(n, "z").polys == img
            printed_ok = printed_ok and appell_image_recurrence(d, a, printed=True).generate(n, "z").polys == img
            rec_ok = rec_ok and all(delta_op(img[k]) == kl_forward(H[k - 1], a + Fraction(1, 2)) * k
                                    for k in range(1, n + 1))
    out.append(Check("hermite_type_image_recurrence", rec_ok,
                     info={"printed_last_coefficient_reproduces_image": printed_ok}))
    # reversed Appell images
    a1, a2, a3 = Fraction(1), Fraction(3, 2), Fraction(1, 3)
    params = {1: (a1,), 2: (a1, a2), 3: (a1, a2, a3)}
    expected_d = {1: 2, 2: 1, 3: 3}
    dd = {}
    img_ok = True
    for d, al in params.items():
        R = reversed_appell(d, al, n)
        for a in ALPHAS:
            img = R.image(a)
            img_ok = img_ok and reversed_appell_image_recurrence(d, a, al).generate(n, "z", check=False).polys == img.polys
        dd[d] = extract_structural(reversed_appell(d, al, n).image(Fraction(1, 2))).detected_d
    out.append(Check("reversed_appell_image_recurrence", img_ok))
    out.append(Check("reversed_appell_image_order", all(dd[d] == expected_d[d] for d in dd),
                     {str(d): dd[d] for d in dd}))
    cdh_ok, g0 = True, None
    for a in ALPHAS:
        cdh = cdh_monic(a, a1, a2, n)
        cdh_ok = cdh_ok and cdh.polys == reversed_appell(2, (a1, a2), n).image(a).polys
        g = cdh.meta["recurrence"].lag(1, 1)
        cdh_ok = cdh_ok and g == (a1 + 1) * (a2 + 1) * (a1 + a2 - 2 * a)
        g0 = g if g0 is None else g0
    out.append(Check("cdh_equals_image", cdh_ok,
                     {"gamma_1": format_rat(g0),
                      "expected": format_rat((a1 + 1) * (a2 + 1) * (a1 + a2))}))
    rep = contiguity_report(Fraction(1, 2), a1, a2, min(n, 10))
    out.append(Check("contiguity", all(rep[k] for k in NINE_CONTIGUITY),
                     {k: rep[k] for k in NINE_CONTIGUITY},
                     info={"R4_with_printed_indices": rep["R4_as_printed"]}))
    R2 = reversed_appell(2, (a1, a2), n)
    dual = dual_vector_check(R2, [bateman_v0(a1, a2), bateman_u1(a1, a2)], 2, n - 2)
    v1 = bateman_v1(a1, a2)
    out.append(Check("bateman_dual_pair", dual,
                     info={"displayed_v1_on_R1": format_rat(v1(R2[1])),
                           "displayed_v1_is_dual": dual_vector_check(R2, [bateman_v0(a1, a2), v1], 2, n - 2)}))
    # perturbed Laguerre
    pl_ok = True
    for alpha, lam in ((0, 1), (Fraction(1, 2), 2), (1, Fraction(1, 3))):
        P = perturbed_laguerre(alpha, lam, n)
        b, g = moments_to_recurrence(perturbed_laguerre_moments(alpha, lam), n - 1)
        pl_ok = pl_ok and b == P.meta["beta"][:n] and g == P.meta["gamma"][: n - 1]
    out.append(Check("perturbed_laguerre_vs_moments", pl_ok))
    sing = {}
    for alpha in ALPHAS:
        lam = 1 / perturbed_laguerre_c(0, alpha)
        try:
            perturbed_laguerre(alpha, lam, 4)
            sing[str(alpha)] = None
        except RegularityError as exc:
            sing[str(alpha)] = exc.level
    out.append(Check("perturbed_laguerre_singular_lambda", all(v == 1 for v in sing.values()), sing))
    return out


# -- theorem -------------------------------------------------------------

def classification_inputs(n: int) -> dict:
    """(sequence, Pearson pair, functional) for the orthogonal families used."""
    a1, mu = Fraction(1, 2), Fraction(1, 2)
    return {
        "laguerre": (laguerre(a1, n), PearsonPair(X, X - (a1 + 1)), laguerre_moments(a1)),
        "hermite": (hermite(n), PearsonPair(Poly.one("x"), X * 2), hermite_moments()),
        "generalized_hermite": (generalized_hermite(mu, n),
                                PearsonPair(X, X * X * 2 - (2 * mu + 1)),
                                generalized_hermite_moments(mu)),
    }


EXPECTED_CASES = {"laguerre": ("b", 2, 0), "hermite": ("c", 4, 0), "generalized_hermite": ("b", 4, 1)}


def theorem(nmax: int = 10) -> list[Check]:
    out = []
    n = max(nmax, 3)
    alpha = Fraction(1, 2)
    for name, (B, pair, u) in classification_inputs(n + 8).items():
        rep = classify(pair, alpha, u)
        want = EXPECTED_CASES[name]
        det = image_structural(B, alpha).detected_d
        out.append(Check(f"classify_{name}", (rep.case, rep.d, rep.s) == want and det == rep.d,
                         {"case": rep.case, "d": rep.d, "class": rep.s, "detected_d": det},
                         info={k: v for k, v in rep.flags.items() if isinstance(v, bool)}))
        tr = theorem_relation_report(B, rep, alpha, n)
        der, pr = tr["derived"], tr["printed"]
        ok = (der["support_in_window"] and der["lag0_equals_zeta_plus_alpha2"]
              and der["lag_minus1_equals_gamma_n"] and der["upper_entries_match_image"])
        verdict = {k: v for k, v in pr.items() if k != "rows"}
        lagm1 = (
            "gamma_n" if der["lag_minus1_equals_gamma_n"] and not der["lag_minus1_equals_gamma_1"]
            else "both" if der["lag_minus1_equals_gamma_1"] else "neither")
        out.append(Check(f"differential_relation_{name}", ok,
                         {k: v for k, v in der.items() if k != "rows"},
                         info={"printed_form": verdict, "lag_minus1_matches": lagm1}))
    # connection coefficients
    conn_ok, printed = True, True
    for name, beta, gamma in _three_term_inputs(n + 2):
        for a in ALPHAS:
            cc = connection_coeffs(beta, gamma, a, n)
            ex = _image_of_three_term(beta, gamma, a, n)
            conn_ok = conn_ok and cc.zeta == ex.zeta and cc.a == ex.a
            printed = printed and connection_coeffs(beta, gamma, a, n, printed=True).a == ex.a
    out.append(Check("connection_coefficients", conn_ok,
                     info={"printed_a_n_n-1_constant_reproduces_image": printed}))
    return out


def _three_term_inputs(n: int):
    yield "laguerre", (lambda k: 2 * k + Fraction(3, 2)), (lambda k: k * (k + Fraction(1, 2)))
    yield "hermite", (lambda k: Fraction(0)), (lambda k: Fraction(k, 2))
    for mu in (Fraction(1, 2), Fraction(1)):
        b, g = moments_to_recurrence(generalized_hermite_moments(mu), n)
        yield f"generalized_hermite({mu})", (lambda k, b=b: b[k]), (lambda k, g=g: g[k - 1])
    P = perturbed_laguerre(0, 1, n)
    yield "perturbed_laguerre", (lambda k, P=P: P.meta["beta"][k]), (lambda k, P=P: P.meta["gamma"][k - 1])


def _image_of_three_term(beta, gamma, alpha, n):
    from .sequences import Recurrence

    B = Recurrence.three_term(beta, gamma).generate(n, check=False)
    return image_structural(B, alpha)


# -- numeric -------------------------------------------------------------

def numeric(tol: float = 1e-6, which: str = "all") -> list[Check]:
    cfg = QuadConfig()
    out = []
    if which in ("kernel", "all"):
        v, e = bessel_k_imag(1.0, 0.0, cfg)
        out.append(Check("kernel_K0_2", abs(v - 0.1138938727495) < 1e-12,
                         {"value": v, "error_estimate": e}))
        worst = max(eigen_residual(x, t, cfg) for x in (0.5, 1.0, 2.0) for t in (0.5, 1.0, 2.0))
        out.append(Check("kernel_eigen_residual", worst <= max(tol, 1e-5), {"max_residual": worst}))
    if which in ("transform", "all"):
        rows = []
        for a in ALPHAS:
            for t in (0.5, 1.0, 2.0):
                for k in range(7):
                    r = kl_numeric_check(Poly.monomial(k, "x"), a, t, cfg)
                    rows.append({"alpha": format_rat(a), "tau": t, "n": k, **r})
        worst = max(r["rel_residual"] for r in rows)
        worst_est = max(r["rel_error_estimate"] for r in rows)
        out.append(Check("transform_quadrature", max(worst, worst_est) <= min(tol, 1e-8),
                         {"max_rel_residual": worst, "max_rel_error_estimate": worst_est, "rows": rows}))
    if which in ("parseval", "all"):
        rows = []
        for n, a, b, mu in ((0, 0, 1, 1.0), (1, Fraction(1, 2), Fraction(1, 2), 0.0),
                            (2, 1, Fraction(3, 2), 0.5)):
            r = parseval_gamma_check(n, a, b, mu, cfg)
            rows.append({"n": n, "alpha": format_rat(Fraction(a)), "beta": format_rat(Fraction(b)),
                         "mu": mu, **r})
        out.append(Check("parseval_gamma", all(r["rel_residual"] <= tol for r in rows), {"rows": rows}))
        rows = []
        for a, a1, a2 in ((0, 1, 1), (0, Fraction(1, 2), Fraction(3, 2))):
            for r in cdh_weight_check(a, a1, a2, 2, cfg):
                rows.append({"alpha": format_rat(Fraction(a)), "a1": format_rat(Fraction(a1)),
                             "a2": format_rat(Fraction(a2)), **r})
        out.append(Check("cdh_weight_moments", all(r["rel_residual"] <= tol for r in rows), {"rows": rows}))
    return out


SUITES = {"identities": identities, "families": families, "theorem": theorem}


def run(suite: str, nmax: int | None = None, tol: float = 1e-6, numeric_suite: str = "all") -> list[Check]:
    names = ["identities", "families", "theorem", "numeric"] if suite == "all" else [suite]
    out = []
    for name in names:
        if name == "numeric":
            out.extend(numeric(tol, numeric_suite))
        else:
            fn = SUITES[name]
            out.extend(fn(nmax) if nmax is not None else fn())
    return out


