"""The reciprocal cubic product P_b(z) = 1 / prod_{k>=0} (1 + z^3/(k+b)^3).

``product_gamma_form`` is the production evaluator (three Gamma factors);
``product_truncated`` multiplies the factors directly and exists as an
independent check of it.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, ZeroFactor
from .special import log_gamma

OMEGA = cmath.exp(2j * math.pi / 3)
OMEGA_INV = OMEGA.conjugate()
SQRT3 = math.sqrt(3.0)

POLE_DISTANCE = 1e-10
ZERO_FACTOR = 1e-14


@dataclass(frozen=True)
class ProductParams:
    b: float

    def __post_init__(self):
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"b must be a finite positive number, got {self.b!r}")


@dataclass(frozen=True)
class TruncatedProduct:
    value: complex
    tail_estimate: float  # relative
    terms: int


def _params(params):
    return params if isinstance(params, ProductParams) else ProductParams(float(params))


def _near_pole(w):
    n = round(w.real)
    return w.real <= 0.5 and n <= 0 and abs(w - n) <= POLE_DISTANCE


def log_product(params, z):
    """log P_b(z) as the sum of three log-Gamma values minus 3 log Gamma(b).

    The result is defined modulo 2 pi i; its real part is log |P_b(z)|.
    """
    b = _params(params).b
    z = complex(z)
    args = (("b+z", b + z), ("b+omega*z", b + OMEGA * z), ("b+z/omega", b + OMEGA_INV * z))
    for label, w in args:
        if _near_pole(w):
            raise PoleError(f"P_b: factor Gamma({label}) has a pole at z={z!r} (b={b})", where=label)
    return sum(log_gamma(w) for _, w in args) - 3.0 * log_gamma(b)


def product_gamma_form(params, z):
    return cmath.exp(log_product(params, z))


def _log1p_complex(r):
    # numpy's complex log1p loses the real part for tiny |r|
    re, im = r.real, r.imag
    return 0.5 * np.log1p(2.0 * re + re * re + im * im) + 1j * np.arctan2(im, 1.0 + re)


def product_truncated(params, z, K):
    """Partial product over k = 0..K-1 with a relative tail bound.

    The tail bound is exp(|z|^3 / (2 (K+b-1)^2)) - 1, which dominates the
    neglected factors since sum_{k>=K} (k+b)^-3 <= 1/(2 (K+b-1)^2).
    """
    b = _params(params).b
    z = complex(z)
    K = int(K)
    if K < 1:
        raise DomainError("K must be at least 1")
    if z == 0:
        return TruncatedProduct(1 + 0j, 0.0, K)
    k = np.arange(K, dtype=float) + b
    ratio = z**3 / k**3
    factors = 1.0 + ratio
    bad = np.flatnonzero(np.abs(factors) <= ZERO_FACTOR)
    if bad.size:
        raise ZeroFactor(int(bad[0]))
    log_sum = np.sum(_log1p_complex(ratio))
    value = complex(np.exp(-log_sum))
    tail = math.expm1(abs(z) ** 3 / (2.0 * (K + b - 1.0) ** 2))
    return TruncatedProduct(value, tail, K)


def asymptotic_mag(params, z):
    """Leading large-|z| model of |P_b(z)| for 0 <= arg z < 2 pi/3, constant set to 1."""
    b = _params(params).b
    z = complex(z)
    r = abs(z)
    if r < 5.0:
        raise DomainError(f"asymptotic model needs |z| >= 5, got {r:.6g}")
    theta = cmath.phase(z)
    if not 0.0 <= theta < 2.0 * math.pi / 3.0:
        raise DomainError(f"arg z = {theta:.6g} outside [0, 2pi/3)")
    x, y = z.real, z.imag
    if theta < math.pi / 3.0:
        exponent = -2.0 * math.pi * x / SQRT3
    else:
        exponent = math.pi * x / SQRT3 - math.pi * y
    return math.exp((3.0 * b - 1.5) * math.log(r) + exponent)
