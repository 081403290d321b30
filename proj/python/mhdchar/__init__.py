"""Characteristic structure and Lopatinski scans for full ideal MHD."""

import json

from ._core import (
    Error,
    EquationOfState,
    IdealGas,
    ThermoState,
    WaveSpeeds,
    assemble_G,
    eigenvalues,
    full_symbol,
    lopatinski_det,
    numeric_spectrum,
    stable_subspace,
    symmetrizer,
    tilde_symbol,
    wave_speeds,
)
from . import _core


def error_kind(exc):
    """Stable error name carried by a library exception."""
    return str(exc).split(":", 1)[0]


def classify(state, eos, xi, axis=None, sigma=0.0):
    return json.loads(_core.classify_json(state, eos, xi, axis, sigma))


def rankine_hugoniot(eos, upstream, mach, d=3, B=(0.0, 0.0, 0.0), family="fast+"):
    return json.loads(_core.rankine_hugoniot_json(eos, upstream, mach, d, list(B), family))


def shock_lopatinski(shock, tau, gamma_L, eta):
    return _core.shock_lopatinski(json.dumps(shock), tau, gamma_L, list(eta))


def scan_shock(shock, interior=2000, equator_factor=4):
    return json.loads(_core.scan_shock_json(json.dumps(shock), interior, equator_factor))


def b_to_zero_study(eos, upstream, mach=2.0, d=3, direction=(1.0, 0.0, 0.0),
                    magnitudes=(1e-1, 1e-2, 1e-3, 0.0), interior=2000, refine=1):
    return json.loads(_core.b_to_zero_study_json(
        eos, upstream, mach, d, list(direction), list(magnitudes), interior, refine))


__all__ = [
    "Error", "EquationOfState", "IdealGas", "ThermoState", "WaveSpeeds", "assemble_G",
    "b_to_zero_study", "classify", "eigenvalues", "error_kind", "full_symbol",
    "lopatinski_det", "numeric_spectrum", "rankine_hugoniot", "scan_shock",
    "shock_lopatinski", "stable_subspace", "symmetrizer", "tilde_symbol", "wave_speeds",
]
