import cmath
import math
import random

import pytest
import scipy.integrate

from cubeprod import DomainError, NoConvergence, NonFinite, QuadConfig, Transform
from cubeprod import integrands as ig
from cubeprod.quadrature import integrate, integrate_full_line, integrate_half_line

SQRT3 = math.sqrt(3.0)
ALPHA = complex(0.5, 0.5 * SQRT3)
HALF_EXP = QuadConfig(transform=Transform.HALF_LINE_EXP_DECAY)
HALF_ALG = QuadConfig(transform=Transform.HALF_LINE_ALGEBRAIC_DECAY)


def sech2(x):
    return math.exp(2 * ig.log_sech(x))


# (integrand, config, exact)
TRIVIAL = [
    (lambda x: math.exp(-x * x), QuadConfig(), math.sqrt(math.pi)),
    (sech2, QuadConfig(), 2.0),
    (lambda x: math.exp(-x), HALF_EXP, 1.0),
    (lambda t: 1.0 / (1.0 + t) ** 2, HALF_ALG, 1.0),
]


@pytest.mark.parametrize("f, cfg, exact", TRIVIAL)
def test_trivial_integrals_and_error_honesty(f, cfg, exact):
    r = integrate(f, cfg)
    assert r.converged
    assert abs(r.value - exact) < 1e-12
    assert abs(r.value - exact) <= 10 * r.err_estimate
    assert r.err_estimate <= max(cfg.abs_tol, cfg.rel_tol * abs(r.value))


def test_main_integrand():
    r = integrate_full_line(ig.main_form)
    assert abs(r.value - 1 / 3) < 1e-8
    assert abs(r.value.imag) < 1e-9


def test_rotated_integrand():
    r = integrate_half_line(ig.rotated_form, HALF_EXP)
    assert abs(r.value - 1 / 6) < 1e-8


def test_rotated_integrand_against_scipy():
    # independent engine on a plain truncated interval
    ref, _ = scipy.integrate.quad(ig.rotated_form, 0, 40, epsabs=1e-13, limit=200)
    assert abs(integrate_half_line(ig.rotated_form).value - ref) < 1e-11


def test_power_substitution_integrand():
    r = integrate_half_line(ig.t_sub_form, HALF_ALG)
    assert abs(r.value - 2 / 3) < 1e-7


@pytest.mark.parametrize("form, exact", [(ig.t_sub_form, 2 / 3), (ig.t_alpha_form, ALPHA / 3), (ig.t_alpha_m1_form, ALPHA.conjugate() / 3)])
def test_two_routes_agree(form, exact):
    direct = integrate_half_line(form, HALF_ALG).value
    substituted = integrate_full_line(ig.exp_substituted(form)).value
    assert abs(direct - substituted) < 1e-9
    assert abs(direct - exact) < 1e-7


def test_linearity():
    rng = random.Random(2)
    pool = [
        lambda x: math.exp(-x * x),
        sech2,
        ig.main_form,
        ig.sqrt_form,
        lambda x: cmath.exp(complex(-x * x, 0.7 * x)),
    ]
    for _ in range(10):
        f, g = rng.sample(pool, 2)
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        rf, rg = integrate_full_line(f), integrate_full_line(g)
        rh = integrate_full_line(lambda x: a * f(x) + b * g(x))
        combined = abs(a) * rf.err_estimate + abs(b) * rg.err_estimate + rh.err_estimate
        assert abs(rh.value - (a * rf.value + b * rg.value)) <= 10 * combined


def test_reflection():
    fwd = integrate_full_line(ig.main_form)
    back = integrate_full_line(lambda x: ig.main_form(-x))
    assert abs(fwd.value - back.value) < 1e-12
    # f(-x) = conj f(x), so the value is real
    assert abs(back.value.imag) < 1e-12


CATALOG_INTEGRANDS = [
    (ig.main_form, Transform.FULL_LINE_EXP_DECAY),
    (ig.sqrt_form, Transform.FULL_LINE_EXP_DECAY),
    (ig.cosh_form, Transform.FULL_LINE_EXP_DECAY),
    (ig.sinh_form, Transform.FULL_LINE_EXP_DECAY),
    (lambda x: ig.hypergeometric_weight(x, 0.75), Transform.FULL_LINE_EXP_DECAY),
    (lambda x: ig.transform_rhs_form(x, 1.25), Transform.FULL_LINE_EXP_DECAY),
    (lambda x: ig.product_form(x, 1.0), Transform.HALF_LINE_EXP_DECAY),
    (ig.rotated_form, Transform.HALF_LINE_EXP_DECAY),
    (ig.gamma_ratio_form, Transform.HALF_LINE_EXP_DECAY),
    (lambda x: ig.f_form(x, 3.0), Transform.HALF_LINE_EXP_DECAY),
    (ig.t_alpha_form, Transform.HALF_LINE_ALGEBRAIC_DECAY),
    (ig.logtrig_form, Transform.HALF_LINE_ALGEBRAIC_DECAY),
]


@pytest.mark.parametrize("f, transform", CATALOG_INTEGRANDS)
def test_level_differences_decrease(f, transform):
    cfg = QuadConfig(abs_tol=1e-300, rel_tol=1e-300, max_level=8, transform=transform)
    with pytest.raises(NoConvergence) as info:
        integrate(f, cfg)
    r = info.value.partial
    # once the differences hit roundoff they just jitter; compare above that floor
    floor = 1e-13 * max(1.0, abs(r.value))
    diffs = [d for d in r.level_diffs[3:] if d > floor]
    assert all(b < a for a, b in zip(diffs, diffs[1:]))


def test_non_finite_integrand():
    with pytest.raises(NonFinite):
        integrate_full_line(lambda x: float("nan"))
    with pytest.raises(NonFinite):
        integrate_full_line(lambda x: 1.0 / (x - x))


def test_no_convergence_carries_partial():
    cfg = QuadConfig(abs_tol=1e-16, rel_tol=1e-16, max_level=4, transform=Transform.HALF_LINE_ALGEBRAIC_DECAY)
    with pytest.raises(NoConvergence) as info:
        integrate(ig.t_alpha_form, cfg)
    r = info.value.partial
    assert not r.converged and r.evaluations > 0
    assert abs(r.value - ALPHA / 3) < 1e-6


def test_config_validation():
    for kwargs in ({"abs_tol": 0}, {"rel_tol": -1}, {"max_level": 2}, {"max_level": 17}):
        with pytest.raises(DomainError):
            QuadConfig(**kwargs)


def test_half_line_replaces_full_line_transform():
    r = integrate_half_line(lambda x: math.exp(-x), QuadConfig())
    assert abs(r.value - 1) < 1e-12


def test_bit_reproducible():
    a = integrate_full_line(ig.main_form)
    b = integrate_full_line(ig.main_form)
    assert a.value == b.value and a.evaluations == b.evaluations


def test_evaluation_budget():
    assert integrate_full_line(ig.main_form).evaluations < 2000
