"""Frame multipliers: bounds, inversion certificates and convergence diagnostics.

A spec is either a JSON-compatible dict ({"m", "phi", "psi", ...} or
{"fixture": {...}}) or a catalogue fixture id.
"""

import json

import numpy as np

from . import _framemult
from ._framemult import Error

__all__ = [
    "Error",
    "apply",
    "bounds",
    "certify",
    "dense",
    "diagnose",
    "emit",
    "fixture",
    "fixtures",
    "inverse",
]

DEFAULT_DIMS = (8, 16, 32, 64)


def fixture(fid, dim=16, **params):
    return {"fixture": {"id": fid, "params": params, "dim": dim}}


def _doc(spec, dim=None, params=None):
    if isinstance(spec, str):
        spec = fixture(spec, dim or 16, **(params or {}))
    return json.dumps(spec)


def _order(order):
    if order is None:
        return _framemult.default_order()
    return order if isinstance(order, str) else ",".join(order)


def certify(spec, order=None, tol=1e-10, oracle=True, dim=None, **params):
    return json.loads(_framemult.certify(_doc(spec, dim, params), _order(order), tol, oracle))


def inverse(spec, order=None, tol=1e-10, dim=None, **params):
    """Dense inverse from the first firing rule, or None."""
    return _framemult.inverse(_doc(spec, dim, params), _order(order), tol)


def bounds(spec, dim=None, **params):
    return json.loads(_framemult.bounds(_doc(spec, dim, params)))


def diagnose(spec, dims=DEFAULT_DIMS, **params):
    return json.loads(_framemult.diagnose(_doc(spec, None, params), list(dims)))


def dense(spec, dim=None, **params):
    return _framemult.dense(_doc(spec, dim, params))


def apply(spec, x, dim=None, **params):
    return _framemult.apply(_doc(spec, dim, params), np.asarray(x, dtype=complex))


def fixtures():
    return json.loads(_framemult.fixtures())


def emit(fid, dim=16, **params):
    return json.loads(_framemult.emit(fid, params, dim))
