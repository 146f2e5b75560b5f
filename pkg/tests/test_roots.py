import cmath
import math

import numpy as np
import pytest

from cubeprod import DomainError, NearZeroOnContour, RootRecord, SymmetryViolation
from cubeprod.product import OMEGA
from cubeprod.roots import F, dF, find_roots_upper, newton, ray_symmetry_check, seed, semicircle_contour, winding_count

SQRT3 = math.sqrt(3.0)


def F_np(z):
    return np.exp(1j * SQRT3 * z) + 2 * np.cosh(z)


def grid_refine(x0, x1, y0, y1, n=41, rounds=40):
    """Locate the minimum of |F| by repeated grid search, shrinking the box around the best cell."""
    for _ in range(rounds):
        xs, ys = np.linspace(x0, x1, n), np.linspace(y0, y1, n)
        X, Y = np.meshgrid(xs, ys)
        vals = np.abs(F_np(X + 1j * Y))
        j, i = np.unravel_index(np.argmin(vals), vals.shape)
        dx, dy = 2 * (x1 - x0) / (n - 1), 2 * (y1 - y0) / (n - 1)
        x0, x1 = xs[i] - dx, xs[i] + dx
        y0, y1 = ys[j] - dy, ys[j] + dy
    return complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))


def test_seed_value():
    assert abs(abs(F(seed(0))) - math.exp(-math.pi * SQRT3 / 2)) < 1e-15
    assert abs(abs(F(seed(0))) - 0.0658) < 1e-4


def test_derivative():
    for z in (0.3 + 1.1j, -2 + 4j, 1j * math.pi * 3.5):
        h = 1e-6
        fd = (F(z + h) - F(z - h)) / (2 * h)
        assert abs(fd - dF(z)) < 1e-7 * max(1.0, abs(dF(z)))


def test_first_root():
    (rec,) = find_roots_upper(1)
    assert rec.index == 0 and rec.seed == seed(0)
    assert abs(F(rec.root)) < 1e-12
    assert rec.residual == abs(F(rec.root))
    assert abs(rec.root - grid_refine(-0.3, 0.3, 1.2, 1.9)) < 1e-10


def test_displacement_matches_smallness_estimate():
    (rec,) = find_roots_upper(1)
    estimate = 0.5 * math.exp(-math.pi * SQRT3 / 2)
    assert abs(estimate - 0.0329) < 1e-4
    assert abs(abs(rec.root - rec.seed) / estimate - 1) < 0.1


def test_root_ladder():
    records = find_roots_upper(20)
    ims = [r.root.imag for r in records]
    assert all(a < b for a, b in zip(ims, ims[1:]))
    for r in records:
        assert r.residual < 1e-11
        assert abs(r.root - r.seed) < 0.2
        assert abs(r.root.real) < 1e-10


@pytest.mark.parametrize("n", range(5))
def test_off_axis_seed_returns_to_axis(n):
    root, _ = newton(seed(n) + 0.15 - 0.05j)
    assert abs(root.real) < 1e-10
    assert abs(root - find_roots_upper(n + 1)[n].root) < 1e-10


def test_rotated_root_newton():
    r = find_roots_upper(1)[0].root
    for w in (OMEGA * r, OMEGA * OMEGA * r):
        polished, _ = newton(w)
        assert abs(polished - w) < 1e-10


def test_ray_symmetry():
    rep = ray_symmetry_check(find_roots_upper(5))
    assert rep.checked == 5
    r = find_roots_upper(1)[0].root
    assert abs(F(OMEGA * r)) < 1e-10


def test_ray_symmetry_violation():
    bad = RootRecord(0, seed(0), 0.01 + 1.6j, 0.0, 0)
    with pytest.raises(SymmetryViolation) as info:
        ray_symmetry_check([bad])
    assert info.value.root == bad.root
    with pytest.raises(DomainError):
        ray_symmetry_check([])


def test_find_roots_rejects_bad_n():
    with pytest.raises(DomainError):
        find_roots_upper(0)


def unit_circle(m=64):
    return [cmath.exp(2j * math.pi * j / m) for j in range(m)]


def test_winding_trivial():
    assert winding_count(lambda z: z, unit_circle()) == 1
    assert winding_count(lambda z: 1.0, semicircle_contour(3.0)) == 0
    assert winding_count(lambda z: z**3, unit_circle()) == 3
    assert winding_count(lambda z: 1 / z, unit_circle()) == -1


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_winding_matches_root_count(N):
    R = math.pi * N
    assert winding_count(F, semicircle_contour(R)) == N
    assert all(abs(r.root) < R for r in find_roots_upper(N))


def test_winding_errors():
    # the semicircle starts at the origin, where z vanishes
    with pytest.raises(NearZeroOnContour):
        winding_count(lambda z: z, semicircle_contour(1.0))
    with pytest.raises(DomainError):
        winding_count(lambda z: z, unit_circle(), samples=100)
