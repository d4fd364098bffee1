"""Floating-point checks of the exact layer against the defining integrals.

The Macdonald kernel is evaluated from its cosine-Fourier representation

    K_{i tau}(t) = int_0^inf exp(-t cosh u) cos(tau u) du

with the trapezoidal rule, which converges geometrically for this even,
entire integrand.  Half-line integrals use the exp-sinh double exponential
substitution.  Every routine returns an error estimate obtained by halving
the step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import Poly, pochhammer, rat
from .transform import kl_forward, monomial_image


class QuadratureError(RuntimeError):
    """Requested tolerance not reached."""


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature settings.

    rel_tol : target relative error.
    decay : truncate the kernel integral once ``t (cosh u - 1)`` exceeds this.
    u_step : initial trapezoid step in ``u``.
    de_step : initial step of the exp-sinh rule.
    max_halvings : step halvings allowed before giving up.
    """

    rel_tol: float = 1e-10
    decay: float = 40.0
    u_step: float = 0.1
    de_step: float = 0.125
    max_halvings: int = 6


DEFAULT = QuadConfig()


# -- kernel ---------------------------------------------------------------

def _u_cutoff(t_min: float, decay: float) -> float:
    return math.acosh(1.0 + decay / t_min)


def _kernel_grid(t: np.ndarray, tau: float, h: float, decay: float,
                 with_scale: bool = False):
    """Trapezoid values of K_{i tau}(t) for an array of ``t`` on a shared ``u`` grid.

    With ``with_scale`` also return the sum of absolute terms, which bounds
    the cancellation in the oscillatory sum.
    """
    u_max = _u_cutoff(float(np.min(t)), decay)
    u = np.arange(0.0, u_max + h, h)
    w = np.full(u.shape, h)
    w[0] = h / 2
    # exponent offset by t keeps the exponentials in range for large t
    e = np.exp(-np.outer(t, np.cosh(u) - 1.0))
    vals = e @ (w * np.cos(tau * u)) * np.exp(-t)
    if not with_scale:
        return vals
    return vals, (e @ w) * np.exp(-t)


def bessel_k_imag(x: float, tau: float, cfg: QuadConfig = DEFAULT) -> tuple[float, float]:
    """``K_{i tau}(2 sqrt(x))`` and an error estimate.

    Raises
    ------
    QuadratureError
        If the step-halving estimate does not drop below ``cfg.rel_tol``.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    t = np.array([2.0 * math.sqrt(x)])
    h = cfg.u_step
    prev = _kernel_grid(t, tau, h, cfg.decay)[0]
    for _ in range(cfg.max_halvings):
        h /= 2
        vals, scale = _kernel_grid(t, tau, h, cfg.decay, with_scale=True)
        cur = vals[0]
        # for large tau the result is exponentially small next to the terms
        err = max(abs(cur - prev), np.finfo(float).eps * scale[0])
        if err <= cfg.rel_tol * max(abs(cur), 1e-300):
            return float(cur), float(err)
        prev = cur
    raise QuadratureError(f"kernel did not converge at x={x}, tau={tau}")


def eigen_residual(x: float, tau: float, cfg: QuadConfig = DEFAULT) -> float:
    """Relative residual of ``x^2 K'' + x K' - x K + (tau/2)^2 K = 0``, with
    derivatives from five-point central differences."""
    h = 1e-2 * x
    pts = [x + k * h for k in (-2, -1, 0, 1, 2)]
    f = [bessel_k_imag(p, tau, cfg)[0] for p in pts]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    k = f[2]
    terms = [x * x * d2, x * d1, -x * k, (tau / 2) ** 2 * k]
    scale = sum(abs(v) for v in terms)
    return abs(sum(terms)) / scale


# -- |Gamma(x + i y)|^2 ---------------------------------------------------

def log_gamma_abs_sq(x, y: float) -> float:
    """``log |Gamma(x + i y)|^2`` for integer or half-integer ``x``."""
    x = rat(x)
    if x.denominator not in (1, 2):
        raise ValueError(f"unsupported real part {x}: denominator must be 1 or 2")
    y = abs(float(y))
    half = x.denominator == 2
    base = Fraction(1, 2) if half else Fraction(1)
    if half:
        # pi / cosh(pi y)
        py = math.pi * y
        val = math.log(math.pi) - py - math.log1p(math.exp(-2 * py)) + math.log(2.0)
    elif y == 0:
        val = 0.0
    else:
        py = math.pi * y
        # pi y / sinh(pi y)
        val = math.log(py) - py - math.log(-math.expm1(-2 * py)) + math.log(2.0)
    k = base
    while k < x:
        val += math.log(float(k) ** 2 + y * y)
        k += 1
    while k > x:
        k -= 1
        q = float(k) ** 2 + y * y
        if q == 0:
            raise ZeroDivisionError(f"Gamma has a pole at {x} + {y}i")
        val -= math.log(q)
    return val


def gamma_abs_sq(x, y: float) -> float:
    """``|Gamma(x + i y)|^2`` for integer or half-integer ``x``."""
    return math.exp(log_gamma_abs_sq(x, y))


# -- half-line quadrature -------------------------------------------------

def _exp_sinh_nodes(h: float, s_max: float, t_max: float) -> tuple[np.ndarray, np.ndarray]:
    s = np.arange(-s_max, s_max + h / 2, h)
    t = np.exp(0.5 * math.pi * np.sinh(s))
    dt = 0.5 * math.pi * np.cosh(s) * t * h
    keep = t <= t_max
    return t[keep], dt[keep]


def half_line(fun, cfg: QuadConfig = DEFAULT, s_max: float = 4.5,
              t_max: float = 700.0) -> tuple[float, float]:
    """``int_0^inf fun(t) dt`` by the exp-sinh rule; ``fun`` is vectorised.

    Nodes beyond ``t_max`` are dropped, so ``fun`` must be negligible there.
    Returns the value and the difference from the half-step estimate.
    """
    h = cfg.de_step
    t, dt = _exp_sinh_nodes(h, s_max, t_max)
    prev = float(np.sum(fun(t) * dt))
    for _ in range(cfg.max_halvings):
        h /= 2
        t, dt = _exp_sinh_nodes(h, s_max, t_max)
        cur = float(np.sum(fun(t) * dt))
        err = abs(cur - prev)
        if err <= cfg.rel_tol * max(abs(cur), 1e-300):
            return cur, err
        prev = cur
    raise QuadratureError("half-line quadrature did not converge")


# -- the transform itself -------------------------------------------------

def _poly_float(p: Poly, v: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(v)
    for c in reversed(p.coeffs):
        acc = acc * v + float(c)
    return acc


def kl_numeric(f: Poly, alpha, tau: float, cfg: QuadConfig = DEFAULT) -> tuple[float, float]:
    """``2 |Gamma(a+1+i tau/2)|^{-2} int_0^inf x^a K_{i tau}(2 sqrt x) f(x) dx``.

    Computed in ``t = 2 sqrt(x)``.  ``alpha`` must be an integer or
    half-integer above -1 so that the normalising constant has a closed form.
    Returns value and error estimate.
    """
    alpha = rat(alpha)
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    a = float(alpha)

    def integrand(t):
        x = t * t / 4
        k = _kernel_grid(t, tau, cfg.u_step / 2, cfg.decay)
        return x ** a * (t / 2) * _poly_float(f, x) * k

    val, err = half_line(integrand, cfg)
    norm = 2.0 / gamma_abs_sq(alpha + 1, tau / 2)
    return val * norm, err * norm


def kl_numeric_check(f: Poly, alpha, tau: float, cfg: QuadConfig = DEFAULT) -> dict:
    """Relative deviation of :func:`kl_numeric` from the exact image."""
    exact = float(kl_forward(f, alpha)(Fraction(tau * tau / 4)))
    val, err = kl_numeric(f, alpha, tau, cfg)
    rel = abs(val - exact) / abs(exact)
    return {"numeric": val, "exact": exact, "rel_residual": rel,
            "rel_error_estimate": err / abs(exact)}


# -- Gamma-product identities ---------------------------------------------

def parseval_gamma_check(n: int, alpha, beta, mu: float, cfg: QuadConfig = DEFAULT) -> dict:
    """Weighted integral of the image of ``x^n`` against a product of three
    Gamma moduli, compared with its closed form:

        int_0^inf |G(b + i(t+m)/2) G(b + i(t-m)/2) G(a+n+1 + i t/2)|^2
                  / (8 pi G(2b) |G(i t)|^2) dt  =  |G(n+a+b+1 + i m/2)|^2 / 2
    """
    alpha, beta = rat(alpha), rat(beta)
    lhs = 0.5 * gamma_abs_sq(n + alpha + beta + 1, mu / 2)
    log_c = math.log(8 * math.pi) + math.lgamma(float(2 * beta))

    def integrand(t):
        out = np.empty_like(t)
        for i, tv in enumerate(t):
            lg = (log_gamma_abs_sq(beta, (tv + mu) / 2) + log_gamma_abs_sq(beta, (tv - mu) / 2)
                  + log_gamma_abs_sq(alpha + n + 1, tv / 2) - log_c)
            # 1/|Gamma(i t)|^2 = t sinh(pi t) / pi
            if tv == 0:
                out[i] = 0.0
                continue
            lg += math.log(tv / math.pi) + math.pi * tv + math.log(-math.expm1(-2 * math.pi * tv)) - math.log(2)
            out[i] = math.exp(lg)
        return out

    rhs, err = half_line(integrand, cfg)
    return {"lhs": lhs, "rhs": rhs, "rel_residual": abs(lhs - rhs) / abs(lhs),
            "rel_error_estimate": err / abs(lhs)}


def cdh_weight_check(alpha, a1, a2, nmax: int, cfg: QuadConfig = DEFAULT) -> list[dict]:
    """Moments ``(a1+1)_n (a2+1)_n`` against the weighted integral of the image of ``x^n``:

        1/(4 pi G(1+a1) G(1+a2) G(a1+a2-2a)) int_0^inf S(t)
            |G(a1-a+it/2) G(a2-a+it/2) G(a+1+it/2)|^2 / |G(it)|^2 dt
    """
    alpha, a1, a2 = rat(alpha), rat(a1), rat(a2)
    if a1 + a2 - 2 * alpha <= 0 or a1 <= alpha or a2 <= alpha:
        raise ValueError("need a1, a2 > alpha")
    log_c = (math.log(4 * math.pi) + math.lgamma(float(1 + a1)) + math.lgamma(float(1 + a2))
             + math.lgamma(float(a1 + a2 - 2 * alpha)))
    rows = []
    for n in range(nmax + 1):
        img = monomial_image(n, alpha)
        exact = float(pochhammer(a1 + 1, n) * pochhammer(a2 + 1, n))

        def integrand(t, img=img):
            out = np.empty_like(t)
            for i, tv in enumerate(t):
                if tv == 0:
                    out[i] = 0.0
                    continue
                lg = (log_gamma_abs_sq(a1 - alpha, tv / 2) + log_gamma_abs_sq(a2 - alpha, tv / 2)
                      + log_gamma_abs_sq(alpha + 1, tv / 2) - log_c)
                lg += math.log(tv / math.pi) + math.pi * tv + math.log(-math.expm1(-2 * math.pi * tv)) - math.log(2)
                out[i] = math.exp(lg) * img.eval_float(tv * tv / 4)
            return out

        val, err = half_line(integrand, cfg)
        rows.append({"n": n, "exact": exact, "numeric": val,
                     "rel_residual": abs(val - exact) / exact, "rel_error_estimate": err / exact})
    return rows
