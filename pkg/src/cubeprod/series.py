"""Residue series and the Ramanujan-type series, summed in log space."""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NoConvergence
from .product import OMEGA, SQRT3
from .special import log_gamma

ALPHA_MIN = math.pi / (2.0 * SQRT3)
ALPHA_MARGIN = 0.05
DEFAULT_MAX_TERMS = 400
_SMALL_RUN = 3


@dataclass
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    terms: list = None


@dataclass(frozen=True)
class AlphaParam:
    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise DomainError("alpha must be finite")
        if not a.real > ALPHA_MIN:
            raise DomainError(f"Re alpha must exceed pi/(2 sqrt 3) = {ALPHA_MIN:.6f}, got {a.real:.6g}")
        object.__setattr__(self, "alpha", a)


def _alpha(alpha):
    return alpha.alpha if isinstance(alpha, AlphaParam) else AlphaParam(alpha).alpha


def _sum_terms(term, first, tol, max_terms, what, keep_terms):
    """Sum term(first), term(first+1), ... until three consecutive terms are below tol*|sum|."""
    total = 0j
    small = 0
    kept = [] if keep_terms else None
    n = first
    t = 0j
    for count in range(1, max_terms + 1):
        t = term(n)
        total += t
        if kept is not None:
            kept.append(t)
        if abs(t) < tol * abs(total):
            small += 1
            if small >= _SMALL_RUN:
                return SeriesResult(total, count, abs(t), kept)
        else:
            small = 0
        n += 1
    raise NoConvergence(
        f"{what} did not converge in {max_terms} terms",
        partial=SeriesResult(total, max_terms, abs(t), kept),
    )


def residue_term(b, n):
    """(-1)^n / n! * |Gamma(b - omega (n + b))|^2 / (n + b)."""
    log_mag = 2.0 * log_gamma(b - OMEGA * (n + b)).real - math.lgamma(n + 1.0) - math.log(n + b)
    return (-1.0) ** n * math.exp(log_mag)


def residue_sum(b, tol=1e-15, max_terms=DEFAULT_MAX_TERMS, keep_terms=False):
    """Sum over n >= 0 of residue_term(b, n); equals Gamma(b)^3 / 3."""
    b = float(b)
    if not b > 0:
        raise DomainError(f"b must be positive, got {b!r}")
    return _sum_terms(lambda n: complex(residue_term(b, n)), 0, tol, max_terms, "residue_sum", keep_terms)


def _log_sin_rotated(k):
    """log sin(pi k e^{i pi/3}) with the growing exponential factored out.

    For w = pi k e^{i pi/3}, sin w = (i/2) e^{-iw} (1 - e^{2iw}) and e^{2iw}
    has modulus e^{-pi k sqrt 3}, so nothing here overflows.
    """
    w = math.pi * k * complex(0.5, 0.5 * SQRT3)
    return complex(-math.log(2.0), 0.5 * math.pi) - 1j * w + cmath.log(1.0 - cmath.exp(2j * w))


def ramanujan_term(alpha, k):
    """(-1)^k / k! |Gamma(1 - omega k)|^2 sin(pi k e^{i pi/3}) (-i e^{-alpha})^k."""
    log_t = (
        2.0 * log_gamma(1.0 - OMEGA * k).real
        - math.lgamma(k + 1.0)
        + _log_sin_rotated(k)
        + k * (-alpha - 0.5j * math.pi)
        + 1j * math.pi * k
    )
    return cmath.exp(log_t)


def ramanujan_series(alpha, tol=1e-15, max_terms=DEFAULT_MAX_TERMS, keep_terms=False):
    """Sum over k >= 1 of ramanujan_term(alpha, k).

    For real alpha the sum equals 2 pi i sin y / (cos y - sqrt3 sin y)^3 with
    y = solve_y(alpha).
    """
    a = _alpha(alpha)
    if a.real <= ALPHA_MIN + ALPHA_MARGIN:
        raise DomainError(
            f"Re alpha = {a.real:.6g} too close to the convergence boundary {ALPHA_MIN:.6f} (margin {ALPHA_MARGIN})"
        )
    return _sum_terms(lambda k: ramanujan_term(a, k), 1, tol, max_terms, "ramanujan_series", keep_terms)


def ramanujan_closed_form(y):
    s, c = math.sin(y), math.cos(y)
    return 2j * math.pi * s / (c - SQRT3 * s) ** 3


def solve_y(alpha, max_iter=100):
    """Root of 2 exp(-sqrt3 y) sin y = exp(-alpha) on (0, pi/6).

    Newton from y0 = exp(-alpha)/2. The left side is increasing and concave
    on (0, pi/6) and y0 lies left of the root, so the iterates increase
    monotonically to it.
    """
    a = _alpha(alpha)
    if a.imag != 0:
        raise DomainError("solve_y needs real alpha")
    target = math.exp(-a.real)
    y = 0.5 * target
    for _ in range(max_iter):
        e = math.exp(-SQRT3 * y)
        h = 2.0 * e * math.sin(y) - target
        dh = 2.0 * e * (math.cos(y) - SQRT3 * math.sin(y))
        step = h / dh
        y -= step
        if abs(step) <= 4e-16 * y:
            break
    else:
        raise NoConvergence(f"solve_y did not converge in {max_iter} iterations", partial=y)
    return y


def y_residual(alpha, y):
    return abs(2.0 * math.exp(-SQRT3 * y) * math.sin(y) - math.exp(-_alpha(alpha).real))
