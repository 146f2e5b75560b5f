"""Numerical kernels and identity checks for P_b(z) = 1 / prod_k (1 + z^3/(k+b)^3)."""

from .catalog import CATALOG, IdentityReport, run_all, verify
from .errors import (
    AmbiguousWinding,
    CubeProdError,
    DomainError,
    NearZeroOnContour,
    NoConvergence,
    NonFinite,
    PoleError,
    SymmetryViolation,
    UnknownIdentity,
    ZeroFactor,
)
from .product import OMEGA, ProductParams, asymptotic_mag, product_gamma_form, product_truncated
from .quadrature import QuadConfig, QuadResult, Transform, integrate, integrate_full_line, integrate_half_line
from .roots import RootRecord, find_roots_upper, ray_symmetry_check, winding_count
from .series import AlphaParam, SeriesResult, ramanujan_series, residue_sum, solve_y
from .special import complex_pow, gamma_abs_sq, hyp2f1, log_gamma

__version__ = "0.1.0"
