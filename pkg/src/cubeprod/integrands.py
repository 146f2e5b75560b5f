"""Overflow-safe integrands used by the identity catalog.

Every function takes a real ``x`` and returns a complex (or real) value that
stays finite for all |x| up to ~1e300: exponentials that grow with |x| are
always factored out analytically before evaluation.
"""

import cmath
import math

from .product import OMEGA, SQRT3, log_product
from .special import hyp2f1, log_gamma

LN2 = math.log(2.0)
PI = math.pi
ALPHA_T = cmath.exp(1j * PI / 3)  # (1 + i sqrt3)/2


def log_three_exp(x, A=1.0, B=1.0, C=1.0, kappa=SQRT3):
    """log(A e^x + B e^-x + C e^{i kappa x}) with the dominant exponential split off.

    Returns |x| + log(base) where base is O(1); for the catalog's
    coefficients base has positive real part, so this is the principal log.
    """
    if x >= 0:
        base = A + B * math.exp(-2.0 * x) + C * cmath.exp(complex(-x, kappa * x))
    else:
        base = A * math.exp(2.0 * x) + B + C * cmath.exp(complex(x, kappa * x))
    return abs(x) + cmath.log(base)


def three_exp_power(x, A=1.0, B=1.0, C=1.0, kappa=SQRT3, power=2.0):
    """(A e^x + B e^-x + C e^{i kappa x})^(-power) on the principal branch."""
    return cmath.exp(-power * log_three_exp(x, A, B, C, kappa))


def log_sech(x):
    ax = abs(x)
    return LN2 - ax - math.log1p(math.exp(-2.0 * ax))


# ---- real-line integrands -------------------------------------------------


def fourier_sech(x, a, beta, nu):
    return cmath.exp(complex(nu * log_sech(beta * x), a * x))


def hypergeometric_weight(x, b):
    ax = abs(x)
    w = -cmath.exp(complex(-ax, SQRT3 * x)) / (1.0 + math.exp(-2.0 * ax))
    weight = cmath.exp(complex(3.0 * b * log_sech(x), b * SQRT3 * x))
    return weight * hyp2f1(b, 3.0 * b, b + 1.0, w)


def sqrt_form(x):
    ax = abs(x)
    e2 = math.exp(-2.0 * ax)
    root = cmath.sqrt(1.0 + e2 + cmath.exp(complex(-ax, SQRT3 * x)))
    # sech x / sqrt(2 cosh x + e^{i sqrt3 x}) = 2 e^{-3|x|/2} / ((1 + e^{-2|x|}) sqrt(...))
    return 2.0 * cmath.exp(complex(-1.5 * ax, 0.5 * SQRT3 * x)) / ((1.0 + e2) * root)


def main_form(x):
    return three_exp_power(x)


def cosh_form(x):
    ax = abs(x)
    scaled_cosh = 0.5 * (1.0 + math.exp(-2.0 * ax))  # cosh x e^{-|x|}
    return scaled_cosh * cmath.exp(complex(ax, SQRT3 * x) - 2.0 * log_three_exp(x))


def sinh_form(x):
    ax = abs(x)
    scaled_sinh = math.copysign(-0.5 * math.expm1(-2.0 * ax), x)  # sinh x e^{-|x|}
    return scaled_sinh * cmath.exp(complex(ax, SQRT3 * x) - 2.0 * log_three_exp(x))


def transform_rhs_form(x, b):
    """e^{i b sqrt3 x} (e^x + e^-x + e^{i sqrt3 x})^(-3b)."""
    return cmath.exp(complex(0.0, b * SQRT3 * x) - 3.0 * b * log_three_exp(x))


def parametric_forms(x, a):
    ea = cmath.exp(a)
    return (
        three_exp_power(x, C=ea),
        cmath.exp(a - 2.0 * log_three_exp(x, A=ea)),
        cmath.exp(a - 2.0 * log_three_exp(x, A=ea, kappa=-SQRT3)),
    )


# ---- power-substitution integrands on (0, inf) -------------------------------


def _log_t_denominator(lt):
    """log(1 + t + t^a) from log t, without forming t itself when t is large."""
    if lt > 0.0:
        return lt + cmath.log(1.0 + math.exp(-lt) + cmath.exp((ALPHA_T - 1.0) * lt))
    return cmath.log(1.0 + math.exp(lt) + cmath.exp(ALPHA_T * lt))


def t_sub_form(t):
    return cmath.exp(-2.0 * _log_t_denominator(math.log(t)))


def t_alpha_form(t):
    lt = math.log(t)
    return cmath.exp(ALPHA_T * lt - 2.0 * _log_t_denominator(lt))


def t_alpha_m1_form(t):
    lt = math.log(t)
    return cmath.exp((ALPHA_T - 1.0) * lt - 2.0 * _log_t_denominator(lt))


def _exp_substituted_log(form_log):
    def g(x):
        return cmath.exp(LN2 + 2.0 * x + form_log(2.0 * x))

    return g


def exp_substituted(form):
    """Rewrite int_0^inf form(t) dt on the real line via t = e^{2x}: 2 e^{2x} form(e^{2x})."""
    return _exp_substituted_log(_T_LOG_FORMS[form])


_T_LOG_FORMS = {
    t_sub_form: lambda lt: -2.0 * _log_t_denominator(lt),
    t_alpha_form: lambda lt: ALPHA_T * lt - 2.0 * _log_t_denominator(lt),
    t_alpha_m1_form: lambda lt: (ALPHA_T - 1.0) * lt - 2.0 * _log_t_denominator(lt),
}


# ---- half-line integrands -------------------------------------------------------


def product_form(x, b):
    return cmath.exp(log_product(b, x)).real


def rotated_form(x):
    e = math.exp(-SQRT3 * x)
    return e * math.cos(PI / 6.0 - x) / (1.0 + 2.0 * math.cos(x) * e) ** 2


def rotated_cube_form(x):
    e = math.exp(-SQRT3 * x)
    return e * e / (1.0 + 2.0 * math.cos(x) * e) ** 3


def log_2sinh(t):
    if t > 1.0:
        return t + math.log1p(-math.exp(-2.0 * t))
    return math.log(2.0 * math.sinh(t))


def logtrig_form(t):
    inv = 1.0 / complex(log_2sinh(t), SQRT3 * t)  # invert before squaring: no overflow at huge t
    return inv * inv


def logtrig_real_form(t):
    L = log_2sinh(t)
    if t > 1.0:
        u = L / t
        return u / (t * t * (3.0 + u * u) ** 2)
    return t * L / (3.0 * t * t + L * L) ** 2


def gamma_ratio_form(x):
    """|Gamma(1 - omega x)|^2 / Gamma(1 + x) for real x >= 0."""
    return math.exp(2.0 * log_gamma(1.0 - OMEGA * x).real - math.lgamma(1.0 + x))


# ---- numerator decomposition f + i g over x prod(1 + x^3/k^3) --------------------


def _f_g_constants(alpha):
    s = SQRT3 * PI
    beta = SQRT3 * PI / 4.0 + alpha / 2.0
    p = (PI - 2.0 * SQRT3 * alpha) / 4.0
    q = (2.0 * SQRT3 * alpha + 3.0 * PI) / 4.0
    r = (2.0 * SQRT3 * alpha - 5.0 * PI) / 4.0
    return s, beta, p, q, r


def f_form(x, alpha):
    """f(x, alpha) P_1(x) / x."""
    s, beta, p, q, r = _f_g_constants(alpha)
    lp = log_product(1.0, x).real
    return 0.5 * (
        math.exp((s - beta) * x + lp) * math.sin(p * x) / x
        + math.exp(-beta * x + lp) * (2.0 * math.sin(q * x) - math.sin(r * x)) / x
    )


def g_form(x, alpha):
    """g(x, alpha) P_1(x) / x."""
    s, beta, p, q, r = _f_g_constants(alpha)
    lp = log_product(1.0, x).real
    if x < 1.0:
        # cos(rx) - e^{sx} cos(px) without cancellation near x = 0
        bracket = -2.0 * math.sin(0.5 * (r + p) * x) * math.sin(0.5 * (r - p) * x) - math.expm1(s * x) * math.cos(p * x)
        return 0.5 * math.exp(-beta * x + lp) * bracket / x
    return 0.5 * (math.exp(-beta * x + lp) * math.cos(r * x) - math.exp((s - beta) * x + lp) * math.cos(p * x)) / x


def numerator(x, alpha):
    """The complex numerator whose real and imaginary parts are f and g."""
    log_base = complex(-alpha, -0.5 * PI)  # log(-i e^{-alpha})
    return cmath.exp(-OMEGA * x * log_base) * math.sin(PI * x) - cmath.exp(
        -OMEGA.conjugate() * x * log_base
    ) * cmath.sin(PI * OMEGA * x)


def f_raw(x, alpha):
    s, beta, p, q, r = _f_g_constants(alpha)
    return 0.5 * math.exp(-beta * x) * (math.exp(s * x) * math.sin(p * x) + 2.0 * math.sin(q * x) - math.sin(r * x))


def g_raw(x, alpha):
    s, beta, p, q, r = _f_g_constants(alpha)
    return 0.5 * math.exp(-beta * x) * (math.cos(r * x) - math.exp(s * x) * math.cos(p * x))


_DECAY_SPECIAL = 2.0 * PI / SQRT3


def g_special_form(x):
    """(1 - e^{pi sqrt3 x} cos(pi x)) e^{-2 pi x/sqrt3} P_1(x) / x."""
    s = SQRT3 * PI
    lp = log_product(1.0, x).real
    if x < 1.0:
        bracket = 2.0 * math.sin(0.5 * PI * x) ** 2 - math.expm1(s * x) * math.cos(PI * x)
        return math.exp(-_DECAY_SPECIAL * x + lp) * bracket / x
    return (math.exp(-_DECAY_SPECIAL * x + lp) - math.exp((s - _DECAY_SPECIAL) * x + lp) * math.cos(PI * x)) / x


def f_special_form(x):
    """sin(pi x) (4 cos(pi x) - e^{pi sqrt3 x}) e^{-2 pi x/sqrt3} P_1(x) / x."""
    s = SQRT3 * PI
    lp = log_product(1.0, x).real
    return (
        math.sin(PI * x)
        / x
        * (4.0 * math.cos(PI * x) * math.exp(-_DECAY_SPECIAL * x + lp) - math.exp((s - _DECAY_SPECIAL) * x + lp))
    )
