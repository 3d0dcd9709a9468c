"""Discrete Kontorovich-Lebedev transforms: kernels, series, identity checks and the wedge BVP."""

import json

from ._dklt import (
    ASINH_PI_CUT,
    PI_CUT,
    DomainError,
    OutsideCertifiedWedge,
    default_tolerance,
    identity_ids,
    j_incomplete,
    kc,
    ks,
    macdonald_imag,
    macdonald_real,
    ode_residual_j,
    pde_residual,
    solution_u,
    synthesize,
)
from . import _dklt


def _coeffs(a):
    return a if isinstance(a, str) else json.dumps(list(a))


def coefficients(spec, n=8):
    return json.loads(_dklt.coefficients_json(_coeffs(spec), n))


def analyze(kernel, function, n, **params):
    return _dklt.analyze(kernel, function, params, n)


def roundtrip(pair, coeffs, n_last):
    return json.loads(_dklt.roundtrip_json(pair, _coeffs(coeffs), n_last))


def verify(identity_id, tolerance=0.0, **params):
    return json.loads(_dklt.verify_json(identity_id, {k: float(v) for k, v in params.items()}, tolerance))


def bvp(coeffs="default", r=(0.5, 4.0, 4), theta=(0.3, 2.8, 4)):
    return json.loads(_dklt.bvp_json(_coeffs(coeffs), r[0], r[1], r[2], theta[0], theta[1], theta[2]))


__all__ = [
    "ASINH_PI_CUT", "PI_CUT", "DomainError", "OutsideCertifiedWedge", "analyze", "bvp", "coefficients",
    "default_tolerance", "identity_ids", "j_incomplete", "kc", "ks", "macdonald_imag", "macdonald_real",
    "ode_residual_j", "pde_residual", "roundtrip", "solution_u", "synthesize", "verify",
]
