"""Zeros of F(z) = exp(i sqrt3 z) + 2 cosh z and argument-principle counting."""

import cmath
import math
from dataclasses import dataclass

from .errors import AmbiguousWinding, DomainError, NearZeroOnContour, NoConvergence, SymmetryViolation
from .product import OMEGA, OMEGA_INV, SQRT3

MAX_NEWTON = 100
MIN_SAMPLES = 2000
MAX_SAMPLES = 2**22


def F(z):
    return cmath.exp(1j * SQRT3 * z) + 2.0 * cmath.cosh(z)


def dF(z):
    return 1j * SQRT3 * cmath.exp(1j * SQRT3 * z) + 2.0 * cmath.sinh(z)


def F_scale(z):
    """Size of the terms of F at z; residuals are measured against this."""
    return max(1.0, abs(cmath.exp(1j * SQRT3 * z)) + 2.0 * abs(cmath.cosh(z)))


@dataclass(frozen=True)
class RootRecord:
    index: int
    seed: complex
    root: complex
    residual: float
    iterations: int


def newton(z0, f=F, df=dF, tol=1e-13, max_iter=MAX_NEWTON):
    """Newton iteration; returns (root, iterations). Raises NoConvergence."""
    z = complex(z0)
    for it in range(1, max_iter + 1):
        step = f(z) / df(z)
        z -= step
        if abs(step) <= tol * max(1.0, abs(z)):
            # one extra step polishes the last digit
            z -= f(z) / df(z)
            return z, it + 1
    raise NoConvergence(f"Newton from {z0!r} did not converge in {max_iter} iterations", partial=z)


def seed(n):
    return 1j * math.pi * (n + 0.5)


def find_roots_upper(N, tol=1e-11):
    """Roots n = 0..N-1 in the upper half plane, seeded at i pi (n + 1/2)."""
    if N < 1:
        raise DomainError("N must be at least 1")
    records = []
    for n in range(N):
        z0 = seed(n)
        try:
            root, iters = newton(z0)
        except NoConvergence as exc:
            raise NoConvergence(f"root n={n} failed to converge", partial=n) from exc
        residual = abs(F(root))
        if not residual < tol:
            raise NoConvergence(f"root n={n}: residual {residual:.3g} exceeds {tol:.3g}", partial=n)
        records.append(RootRecord(n, z0, root, residual, iters))
    return records


def semicircle_contour(R, arc_vertices=1024):
    """Closed polyline: 0 -> R along the real axis, arc to -R, back to 0."""
    pts = [0j]
    for j in range(arc_vertices + 1):
        pts.append(R * cmath.exp(1j * math.pi * j / arc_vertices))
    return pts


def _sample_polyline(contour, samples):
    """``samples`` points spaced uniformly in arclength around the closed polyline."""
    pts = list(contour)
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    lengths = [abs(b - a) for a, b in zip(pts, pts[1:])]
    total = math.fsum(lengths)
    out = []
    seg = 0
    start = 0.0
    for j in range(samples):
        s = total * j / samples
        while seg < len(lengths) - 1 and s > start + lengths[seg]:
            start += lengths[seg]
            seg += 1
        t = (s - start) / lengths[seg] if lengths[seg] else 0.0
        out.append(pts[seg] + t * (pts[seg + 1] - pts[seg]))
    out.append(out[0])
    return out


def winding_count(f, contour, samples=MIN_SAMPLES, zero_tol=1e-300):
    """Winding number of f around 0 along a closed polyline.

    Samples are doubled until every step changes arg f by less than pi/2.
    """
    if samples < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples")
    n = samples
    while True:
        points = _sample_polyline(contour, n)
        values = []
        for z in points:
            v = complex(f(z))
            if abs(v) <= zero_tol or not math.isfinite(abs(v)):
                raise NearZeroOnContour(z)
            values.append(v)
        total = 0.0
        worst = 0.0
        for a, b in zip(values, values[1:]):
            d = cmath.phase(b / a)
            worst = max(worst, abs(d))
            total += d
        if worst < 0.5 * math.pi:
            break
        if n >= MAX_SAMPLES:
            raise AmbiguousWinding(total / (2.0 * math.pi))
        n *= 2
    raw = total / (2.0 * math.pi)
    count = round(raw)
    if abs(raw - count) > 0.1:
        raise AmbiguousWinding(raw)
    return count


@dataclass
class SymmetryReport:
    checked: int
    max_rotated_residual: float
    max_axis_offset: float


def ray_symmetry_check(records, tol=1e-10):
    """Check that omega*r and r/omega are zeros of F and that r lies on the imaginary axis.

    Residuals at the rotated points are scaled by the size of the terms of F
    there (F_scale), which grows like exp(sqrt3 |r| / 2).
    """
    if not records:
        raise DomainError("no roots to check")
    worst_res = 0.0
    worst_axis = 0.0
    for rec in records:
        r = rec.root
        for w in (OMEGA * r, OMEGA_INV * r):
            res = abs(F(w)) / F_scale(w)
            worst_res = max(worst_res, res)
            if not res < tol:
                raise SymmetryViolation(r, f"|F({w})| / scale = {res:.3g} exceeds {tol:.3g}")
        worst_axis = max(worst_axis, abs(r.real))
        if not abs(r.real) < tol:
            raise SymmetryViolation(r, f"distance {abs(r.real):.3g} from the imaginary axis exceeds {tol:.3g}")
    return SymmetryReport(len(records), worst_res, worst_axis)
