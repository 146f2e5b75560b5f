"""Registry of identities, each checked by two independent computations.

An IdentityCase carries two recipes. Each recipe takes the parameter dict and
a QuadConfig and returns an ``Evaluated`` (value, work count). Recipes never
share cached intermediates: a left side and a right side are computed from
scratch every time they are verified.
"""

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from . import integrands as ig
from .errors import CubeProdError, DomainError, UnknownIdentity
from .product import SQRT3
from .quadrature import QuadConfig, Transform, integrate
from .series import ALPHA_MIN, ALPHA_MARGIN, ramanujan_closed_form, ramanujan_series, residue_sum, solve_y
from .special import gamma_abs_sq

PI = math.pi
ALPHA_SPECIAL = 5.0 * PI / (2.0 * SQRT3)
SERIES_TOL = 1e-15

FULL = Transform.FULL_LINE_EXP_DECAY
HALF_EXP = Transform.HALF_LINE_EXP_DECAY
HALF_ALG = Transform.HALF_LINE_ALGEBRAIC_DECAY


class Evaluated(NamedTuple):
    value: complex
    evaluations: int


@dataclass(frozen=True)
class IdentityCase:
    id: str
    description: str
    lhs: Callable
    rhs: Callable
    tol: float
    grid: tuple = ({},)
    relative: bool = False
    tags: tuple = ()
    kind: str = "integral"
    # optional extra acceptance step: (params, lhs, rhs, tol) -> (ok, details)
    check: Callable = None
    domain: Callable = None


@dataclass
class IdentityReport:
    id: str
    params: dict
    lhs: complex
    rhs: complex
    abs_err: float
    tol: float
    passed: bool
    evaluations: int
    wall_time: float
    details: dict = field(default_factory=dict)

    def to_dict(self, timing=True):
        return {
            "id": self.id,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "lhs": _jsonable(complex(self.lhs)),
            "rhs": _jsonable(complex(self.rhs)),
            "abs_err": _finite_or_none(self.abs_err),
            "tol": self.tol,
            "pass": self.passed,
            "evaluations": self.evaluations,
            "wall_time_ms": round(1000.0 * self.wall_time, 3) if timing else None,
            **({"details": {k: _jsonable(v) for k, v in self.details.items()}} if self.details else {}),
        }


def _finite_or_none(v):
    return v if math.isfinite(v) else None


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": _finite_or_none(v.real), "im": _finite_or_none(v.imag)}
    if isinstance(v, float):
        return _finite_or_none(v)
    return v


# ---- recipe helpers ---------------------------------------------------------------


def _quad(f, cfg, transform):
    r = integrate(f, cfg.with_transform(transform))
    return Evaluated(r.value, r.evaluations)


def _const(value):
    return lambda params, cfg: Evaluated(complex(value), 0)


def _gamma3(b):
    return math.exp(3.0 * math.lgamma(b))


# ---- fourier transform of sech^nu -------------------------------------------------


def _fourier_lhs(p, cfg):
    a, beta, nu = p["a"], p["beta"], p["nu"]
    return _quad(lambda x: ig.fourier_sech(x, a, beta, nu), cfg, FULL)


def _fourier_rhs(p, cfg):
    a, beta, nu = p["a"], p["beta"], p["nu"]
    mag = gamma_abs_sq(complex(0.5 * nu, 0.5 * a / beta))
    return Evaluated(complex(2.0 ** (nu - 1.0) / beta * mag * math.exp(-math.lgamma(nu))), 0)


# ---- residue sum and hypergeometric form ------------------------------------------


def _residue_lhs(p, cfg):
    r = residue_sum(p["b"], tol=SERIES_TOL)
    return Evaluated(r.value, r.terms_used)


def _hyper_lhs(p, cfg):
    b = p["b"]
    return _quad(lambda x: ig.hypergeometric_weight(x, b), cfg, FULL)


def _hyper_rhs(p, cfg):
    b = p["b"]
    return Evaluated(complex(2.0 ** (3.0 * b - 1.0) * b / 3.0 * _gamma3(b) / math.gamma(3.0 * b)), 0)


# ---- power substitution ------------------------------------------------------------


def _t_recipe(form):
    def lhs(p, cfg):
        if p.get("route") == "exp_substitution":
            return _quad(ig.exp_substituted(form), cfg, FULL)
        return _quad(form, cfg, HALF_ALG)

    return lhs


# ---- transformation of the product integral ----------------------------------------


def _product_integral(p, cfg):
    b = p["b"]
    return _quad(lambda x: ig.product_form(x, b), cfg, HALF_EXP)


def _transform_rhs(p, cfg):
    b = p["b"]
    r = _quad(lambda x: ig.transform_rhs_form(x, b), cfg, FULL)
    scale = 4.0 * PI * math.gamma(3.0 * b) / (_gamma3(b) * SQRT3)
    return Evaluated(scale * r.value, r.evaluations)


def _rotated_cube_rhs(p, cfg):
    r = _quad(ig.rotated_cube_form, cfg, HALF_EXP)
    return Evaluated(8.0 * PI * r.value, r.evaluations)


# ---- parametric extension --------------------------------------------------------


def _parametric_lhs(p, cfg):
    a = complex(p["a"])
    total = 0j
    evals = 0
    for j in range(3):
        r = _quad(lambda x, j=j: ig.parametric_forms(x, a)[j], cfg, FULL)
        total += r.value
        evals += r.evaluations
    return Evaluated(total, evals)


def _parametric_domain(p):
    if abs(complex(p["a"])) > 0.25:
        raise DomainError("the parametric identity is only checked for |a| <= 0.25")


# ---- Ramanujan-type series -------------------------------------------------------


def _alpha_domain(p):
    if not p["alpha"] > ALPHA_MIN + ALPHA_MARGIN:
        raise DomainError(f"alpha must exceed {ALPHA_MIN + ALPHA_MARGIN:.6f}")


def _r2_lhs(p, cfg):
    r = ramanujan_series(p["alpha"], tol=SERIES_TOL)
    return Evaluated(r.value, r.terms_used)


def _r2_rhs(p, cfg):
    return Evaluated(ramanujan_closed_form(solve_y(p["alpha"])), 0)


def _g_lhs(p, cfg):
    if p.get("form") == "special":
        return _quad(ig.g_special_form, cfg, HALF_EXP)
    alpha = p["alpha"]
    return _quad(lambda x: ig.g_form(x, alpha), cfg, HALF_EXP)


def _f_lhs(p, cfg):
    if p.get("form") == "special":
        return _quad(ig.f_special_form, cfg, HALF_EXP)
    alpha = p["alpha"]
    return _quad(lambda x: ig.f_form(x, alpha), cfg, HALF_EXP)


def _f_rhs(p, cfg):
    # The combined numerator integral equals 2 pi i times the series sum;
    # the special form carries twice f.
    r = ramanujan_series(p["alpha"], tol=SERIES_TOL)
    factor = 2.0 if p.get("form") == "special" else 1.0
    return Evaluated(factor * 2j * PI * r.value, r.terms_used)


_RATIO_CANDIDATES = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)


def _f_constant_check(p, lhs, rhs, tol):
    """Resolve which closed-form constant the f-integral actually equals.

    Two candidate constants disagree by a factor -2:
    A = 4 pi^2 s/(c - sqrt3 s)^3 and B = 8 pi^2 s/(sqrt3 s - c)^3
    (s = sin y, c = cos y). The measured ratio to A is rounded to the
    nearest simple rational and the resulting constant must reproduce the
    integral. The special-alpha integrand equals 2 f; A is doubled for it
    while B is taken as is, since B is stated for that integrand directly.
    """
    y = solve_y(p["alpha"])
    s, c = math.sin(y), math.cos(y)
    const_a = 4.0 * PI**2 * s / (c - SQRT3 * s) ** 3
    const_b = 8.0 * PI**2 * s / (SQRT3 * s - c) ** 3
    if p.get("form") == "special":
        const_a *= 2.0
    measured = lhs.real / const_a
    ratio = min(_RATIO_CANDIDATES, key=lambda q: abs(q - measured))
    resolved = ratio * const_a
    ok = abs(lhs - resolved) <= tol
    details = {
        "y": y,
        "constant_a": const_a,
        "constant_b": const_b,
        "ratio_to_a": ratio,
        "ratio_to_b": resolved / const_b,
        "resolved_constant": resolved,
        "resolved_abs_err": abs(lhs - resolved),
        "resolved_form": _describe_ratio(ratio, p.get("form") == "special"),
    }
    return ok, details


def _describe_ratio(ratio, special):
    k = 4.0 * ratio * (2.0 if special else 1.0)  # coefficient of pi^2 over (cos y - sqrt3 sin y)^3
    if k < 0:
        return f"{-k:g} pi^2 sin y / (sqrt3 sin y - cos y)^3"
    return f"{k:g} pi^2 sin y / (cos y - sqrt3 sin y)^3"


# ---- log-trigonometric integrals --------------------------------------------------


def _logtrig_lhs(p, cfg):
    if p.get("form") == "real":
        return _quad(ig.logtrig_real_form, cfg, HALF_ALG)
    r = _quad(ig.logtrig_form, cfg, HALF_ALG)
    return Evaluated(complex(r.value.imag), r.evaluations)


def _beta_lhs(p, cfg):
    r = _quad(ig.gamma_ratio_form, cfg, HALF_EXP)
    return Evaluated(PI * r.value, r.evaluations)


def _beta_rhs(p, cfg):
    r = _quad(ig.logtrig_form, cfg, HALF_ALG)
    return Evaluated(-2.0 * PI * r.value, r.evaluations)


# ---- registry -------------------------------------------------------------------------

_T_ROUTES = ({"route": "algebraic"}, {"route": "exp_substitution"})
_ALPHAS = ({"alpha": 2.0}, {"alpha": ALPHA_SPECIAL}, {"alpha": 3.0})

CATALOG = (
    IdentityCase(
        "fourier_cosh",
        "int e^{iax} sech^nu(beta x) dx = 2^{nu-1}/(beta Gamma(nu)) |Gamma(nu/2 + ia/(2 beta))|^2",
        _fourier_lhs,
        _fourier_rhs,
        1e-9,
        grid=(
            {"a": 1.0, "beta": 1.0, "nu": 2.0},
            {"a": SQRT3, "beta": 1.0, "nu": 3.0},
            {"a": 0.5, "beta": 2.0, "nu": 1.5},
        ),
        relative=True,
        tags=("residue",),
    ),
    IdentityCase(
        "residue_sum_b",
        "sum_n (-1)^n/n! |Gamma(b - omega(n+b))|^2/(n+b) = Gamma(b)^3/3",
        _residue_lhs,
        lambda p, cfg: Evaluated(complex(_gamma3(p["b"]) / 3.0), 0),
        1e-9,
        grid=tuple({"b": b} for b in (0.3, 0.5, 0.75, 1.0, 1.5, 2.0)),
        relative=True,
        tags=("residue",),
        kind="series",
    ),
    IdentityCase(
        "hypergeom_b",
        "int e^{ib sqrt3 x} sech^{3b} x 2F1(b,3b;b+1;-e^{i sqrt3 x}/(2cosh x)) dx = 2^{3b-1} (b/3) Gamma(b)^3/Gamma(3b)",
        _hyper_lhs,
        _hyper_rhs,
        1e-7,
        grid=tuple({"b": b} for b in (0.4, 0.5, 0.75, 1.0)),
        tags=("residue",),
    ),
    IdentityCase(
        "sqrt_b_half",
        "int sech x e^{i sqrt3 x/2} / sqrt(e^x + e^-x + e^{i sqrt3 x}) dx = pi/3",
        lambda p, cfg: _quad(ig.sqrt_form, cfg, FULL),
        _const(PI / 3.0),
        1e-8,
        tags=("closed_form",),
    ),
    IdentityCase(
        "main_b1",
        "int dx / (e^x + e^-x + e^{i sqrt3 x})^2 = 1/3",
        lambda p, cfg: _quad(ig.main_form, cfg, FULL),
        _const(1.0 / 3.0),
        1e-8,
        tags=("closed_form",),
    ),
    IdentityCase(
        "cosh_weight",
        "int e^{i sqrt3 x} cosh x / (e^x + e^-x + e^{i sqrt3 x})^2 dx = 1/12",
        lambda p, cfg: _quad(ig.cosh_form, cfg, FULL),
        _const(1.0 / 12.0),
        1e-8,
        tags=("closed_form",),
    ),
    IdentityCase(
        "sinh_weight",
        "int e^{i sqrt3 x} sinh x / (2cosh x + e^{i sqrt3 x})^2 dx = i sqrt3/12",
        lambda p, cfg: _quad(ig.sinh_form, cfg, FULL),
        _const(1j * SQRT3 / 12.0),
        1e-9,
        tags=("closed_form",),
    ),
    IdentityCase(
        "t_sub",
        "int_0^inf dt / (1 + t + t^a)^2 = 2/3, a = e^{i pi/3}",
        _t_recipe(ig.t_sub_form),
        _const(2.0 / 3.0),
        1e-7,
        grid=_T_ROUTES,
        tags=("substitution",),
    ),
    IdentityCase(
        "t_alpha",
        "int_0^inf t^a dt / (1 + t + t^a)^2 = a/3",
        _t_recipe(ig.t_alpha_form),
        _const(ig.ALPHA_T / 3.0),
        1e-7,
        grid=_T_ROUTES,
        tags=("substitution",),
    ),
    IdentityCase(
        "t_alpha_m1",
        "int_0^inf t^{a-1} dt / (1 + t + t^a)^2 = 1/(3a)",
        _t_recipe(ig.t_alpha_m1_form),
        _const(1.0 / (3.0 * ig.ALPHA_T)),
        1e-7,
        grid=_T_ROUTES,
        tags=("substitution",),
    ),
    IdentityCase(
        "transform_b",
        "int_0^inf P_b(x) dx = 4 pi Gamma(3b)/(Gamma(b)^3 sqrt3) int e^{ixb sqrt3} / (e^x + e^-x + e^{ix sqrt3})^{3b} dx",
        _product_integral,
        _transform_rhs,
        1e-7,
        grid=tuple({"b": b} for b in (0.5, 0.75, 1.0, 1.25)),
        tags=("transformation",),
    ),
    IdentityCase(
        "rotated",
        "int_0^inf e^{x sqrt3} cos(pi/6 - x) / (2cos x + e^{x sqrt3})^2 dx = 1/6",
        lambda p, cfg: _quad(ig.rotated_form, cfg, HALF_EXP),
        _const(1.0 / 6.0),
        1e-8,
        tags=("rotated",),
    ),
    IdentityCase(
        "product_integral",
        "int_0^inf P_1(x) dx = 8 pi int_0^inf e^{x sqrt3} / (2cos x + e^{x sqrt3})^3 dx",
        lambda p, cfg: _product_integral({"b": 1.0}, cfg),
        _rotated_cube_rhs,
        1e-7,
        tags=("rotated", "transformation"),
    ),
    IdentityCase(
        "parametric",
        "sum of the three a-deformed integrals = 1",
        _parametric_lhs,
        _const(1.0),
        1e-7,
        grid=tuple({"a": a} for a in (0.0, 0.1, -0.15, complex(0.1, 0.1), complex(0.0, 0.2))),
        tags=("parametric",),
        domain=_parametric_domain,
    ),
    IdentityCase(
        "ramanujan_r2",
        "sum_k (-1)^k/k! |Gamma(1 - omega k)|^2 sin(pi k e^{i pi/3}) (-i e^{-alpha})^k = 2 pi i sin y/(cos y - sqrt3 sin y)^3",
        _r2_lhs,
        _r2_rhs,
        1e-8,
        grid=_ALPHAS,
        relative=True,
        tags=("ramanujan",),
        kind="series",
        domain=_alpha_domain,
    ),
    IdentityCase(
        "g_zero",
        "int_0^inf g(x, alpha) P_1(x) / x dx = 0",
        _g_lhs,
        _const(0.0),
        1e-7,
        grid=_ALPHAS + ({"alpha": ALPHA_SPECIAL, "form": "special"},),
        tags=("ramanujan",),
        domain=_alpha_domain,
    ),
    IdentityCase(
        "f_value",
        "int_0^inf f(x, alpha) P_1(x) / x dx = Re of 2 pi i times the Ramanujan-type series",
        _f_lhs,
        _f_rhs,
        1e-7,
        grid=_ALPHAS + ({"alpha": ALPHA_SPECIAL, "form": "special"},),
        tags=("ramanujan",),
        check=_f_constant_check,
        domain=_alpha_domain,
    ),
    IdentityCase(
        "logtrig",
        "Im int_0^inf dt/(it sqrt3 + ln(2 sinh t))^2 = 0 and its real form",
        _logtrig_lhs,
        _const(0.0),
        1e-8,
        grid=({"form": "imag"}, {"form": "real"}),
        tags=("logtrig",),
    ),
    IdentityCase(
        "beta_link",
        "pi int_0^inf Gamma(1 - omega x) Gamma(1 - x/omega)/Gamma(1 + x) dx = -2 pi int_0^inf dt/(it sqrt3 + ln(2 sinh t))^2",
        _beta_lhs,
        _beta_rhs,
        1e-7,
        tags=("logtrig",),
    ),
)

_BY_ID = {case.id: case for case in CATALOG}


def get_case(identity_id):
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}; known: {', '.join(_BY_ID)}") from None


def select(filter=None):
    """Cases whose id equals ``filter`` or which carry it as a tag (all cases if empty)."""
    if not filter:
        return list(CATALOG)
    chosen = [c for c in CATALOG if c.id == filter or filter in c.tags]
    if not chosen:
        raise UnknownIdentity(f"no identity matches {filter!r}")
    return chosen


def _partial_of(exc):
    """(best value, work done) carried by a failed computation, if any."""
    partial = getattr(exc, "partial", None)
    value = getattr(partial, "value", partial)
    work = getattr(partial, "evaluations", getattr(partial, "terms_used", 0))
    try:
        return complex(value), work
    except (TypeError, ValueError):
        return complex(math.nan, math.nan), work


def verify(identity_id, params=None, cfg=None, tol=None):
    """Verify one identity at one parameter point and return its report.

    Errors raised while computing either side are captured in the report
    (``passed`` false, message under ``details['error']``).
    """
    case = get_case(identity_id)
    params = dict(case.grid[0] if params is None else params)
    if case.domain is not None:
        case.domain(params)
    cfg = cfg or QuadConfig()
    tol = case.tol if tol is None else tol

    start = time.perf_counter()
    details = {}
    evaluations = 0
    lhs = rhs = complex(math.nan, math.nan)
    try:
        left = case.lhs(params, cfg)
        lhs, evaluations = complex(left.value), left.evaluations
    except CubeProdError as exc:
        lhs, evaluations = _partial_of(exc)
        details["error"] = f"lhs: {type(exc).__name__}: {exc}"
    try:
        right = case.rhs(params, cfg)
        rhs, evaluations = complex(right.value), evaluations + right.evaluations
    except CubeProdError as exc:
        rhs, work = _partial_of(exc)
        evaluations += work
        details.setdefault("error", f"rhs: {type(exc).__name__}: {exc}")

    abs_err = abs(lhs - rhs)
    if not math.isfinite(abs_err):
        abs_err = math.inf
    eff_tol = tol * abs(rhs) if case.relative and math.isfinite(abs(rhs)) else tol
    passed = "error" not in details and abs_err <= eff_tol
    if case.check is not None and "error" not in details:
        try:
            ok, extra = case.check(params, lhs, rhs, eff_tol)
            details.update(extra)
            passed = passed and ok
        except CubeProdError as exc:
            details["error"] = f"check: {type(exc).__name__}: {exc}"
            passed = False
    wall = time.perf_counter() - start
    return IdentityReport(case.id, params, lhs, rhs, abs_err, eff_tol, passed, evaluations, wall, details)


def run_all(cfg=None, filter=None, workers=1, tol=None):
    """Verify every selected case over its whole parameter grid, in registry order."""
    jobs = [(case.id, p) for case in select(filter) for p in case.grid]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: verify(job[0], job[1], cfg, tol), jobs))
    return [verify(i, p, cfg, tol) for i, p in jobs]


# ---- summaries and serialization -------------------------------------------------------


def summarize(reports):
    passed = sum(r.passed for r in reports)
    summary = {"total": len(reports), "passed": passed, "failed": len(reports) - passed}
    par = [abs(complex(r.params["a"])) for r in reports if r.id == "parametric" and r.passed]
    if par:
        summary["parametric_max_abs_a_passed"] = max(par)
    return summary


def reports_to_json(reports, timing=True):
    return json.dumps([r.to_dict(timing) for r in reports], indent=2) + "\n"


def _fmt_param(v):
    if isinstance(v, complex):
        return f"{v.real:g}{v.imag:+g}i"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _fmt_complex(z):
    return f"{z.real:+.12e} {z.imag:+.12e}i"


def reports_to_table(reports, timing=True):
    rows = [("id", "params", "lhs", "rhs", "abs_err", "tol", "pass", "evals", "ms")]
    for r in reports:
        params = ",".join(f"{k}={_fmt_param(v)}" for k, v in r.params.items())
        rows.append(
            (
                r.id,
                params,
                _fmt_complex(r.lhs),
                _fmt_complex(r.rhs),
                f"{r.abs_err:.2e}",
                f"{r.tol:.1e}",
                "PASS" if r.passed else "FAIL",
                str(r.evaluations),
                f"{1000 * r.wall_time:.1f}" if timing else "-",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    for r in reports:
        if "error" in r.details:
            lines.append(f"! {r.id}: {r.details['error']}")
        if "resolved_form" in r.details:
            lines.append(
                f"* {r.id} alpha={r.params['alpha']:.6g}: integral matches {r.details['resolved_form']}"
                f" (ratio to A = 4pi^2 s/(c - sqrt3 s)^3: {r.details['ratio_to_a']:+g},"
                f" to B = 8pi^2 s/(sqrt3 s - c)^3: {r.details['ratio_to_b']:+g})"
            )
    s = summarize(reports)
    lines.append(f"{s['passed']}/{s['total']} passed")
    if "parametric_max_abs_a_passed" in s:
        lines.append(f"largest |a| passing the parametric identity: {s['parametric_max_abs_a_passed']:.6g}")
    return "\n".join(lines) + "\n"
