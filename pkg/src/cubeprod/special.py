"""Complex special-function kernel.

Scalars are plain Python ``complex`` values. Every routine works on the
principal branch and never squares a Gamma value directly: magnitudes go
through ``2 * Re log_gamma`` so that arguments with large imaginary part do
not overflow.
"""

import cmath
import math

from .errors import DomainError, NoConvergence, NonFinite, PoleError

POLE_DISTANCE = 1e-12
HYP2F1_MAX_TERMS = 500
HYP2F1_MAX_ABS_Z = 0.75

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k - 1)), k = 1..10
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

# Stirling is used directly once Re z >= _SHIFT_TO, or once |z| >= _DIRECT_RADIUS
# with |arg z| <= 3pi/4; otherwise z is shifted upward first.
_SHIFT_TO = 10.0
_DIRECT_RADIUS = 40.0
_DIRECT_MAX_ARG = 0.75 * math.pi


def _check_finite(z, name="z"):
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")


def _check_pole(z):
    if z.real <= 0.5:
        n = round(z.real)
        if n <= 0 and abs(z - n) <= POLE_DISTANCE:
            raise PoleError(f"log_gamma: {z!r} is within {POLE_DISTANCE} of the pole at {n}", where=n)


def _stirling(z):
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    acc = 0j
    for c in reversed(_STIRLING):
        acc = acc * zinv2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * zinv


def log_gamma(z):
    """Principal branch of ln Gamma(z).

    Uses the Stirling series, after upward recurrence
    ``lnG(z) = lnG(z + n) - sum(log(z + k))`` when ``z`` is not already in
    the asymptotic region. The recurrence with principal logs reproduces the
    principal (cut-plane continuous) branch exactly, so no branch correction
    is needed, unlike the reflection formula.
    """
    z = complex(z)
    _check_finite(z)
    _check_pole(z)
    if z.real >= _SHIFT_TO or (abs(z) >= _DIRECT_RADIUS and abs(cmath.phase(z)) <= _DIRECT_MAX_ARG):
        return _stirling(z)
    n = int(math.ceil(_SHIFT_TO - z.real))
    shift = 0j
    for k in range(n):
        shift += cmath.log(z + k)
    return _stirling(z + n) - shift


def gamma_abs_sq(z):
    """|Gamma(z)|^2 computed as exp(2 Re log_gamma(z))."""
    log_mag = 2.0 * log_gamma(z).real
    try:
        return math.exp(log_mag)
    except OverflowError:
        raise NonFinite(f"|Gamma({z!r})|^2 = exp({log_mag:.6g}) overflows") from None


def hyp2f1(a, b, c, z, max_terms=HYP2F1_MAX_TERMS):
    """Gauss hypergeometric function by its power series, for |z| <= 0.75."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    for name, v in (("a", a), ("b", b), ("c", c), ("z", z)):
        _check_finite(v, name)
    if abs(z) > HYP2F1_MAX_ABS_Z:
        raise DomainError(f"hyp2f1 series requires |z| <= {HYP2F1_MAX_ABS_Z}, got |z|={abs(z):.6g}")
    if c.imag == 0 and c.real <= 0 and abs(c.real - round(c.real)) <= POLE_DISTANCE:
        raise PoleError(f"hyp2f1: c={c!r} is a non-positive integer", where=round(c.real))

    total = 1 + 0j
    term = 1 + 0j
    az = abs(z)
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if term == 0:
            return total
        # ratio of consecutive terms tends to z; once it is below 1 the
        # remaining tail is bounded by a geometric series
        ratio = max(abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2))), 1.0) * az
        if ratio < 1.0:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail <= 1e-15 * abs(total):
                return total
    raise NoConvergence(f"hyp2f1 did not converge in {max_terms} terms", partial=total)


def complex_pow(t, p):
    """t**p for real t > 0, defined as exp(p ln t) with the real logarithm."""
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"complex_pow needs a finite positive base, got {t!r}")
    return cmath.exp(complex(p) * math.log(t))
