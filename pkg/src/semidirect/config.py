"""Run-wide numeric tolerance and the error measure used by every comparison."""

import math

import numpy as np

TOL = 1e-9
"""Default relative tolerance for equality of group and algebra elements."""


def get_tol(tol=None):
    return TOL if tol is None else float(tol)


def set_tol(tol):
    global TOL
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    TOL = float(tol)


def rel_diff(a, b) -> float:
    """||a - b|| / max(1, ||a||, ||b||), Frobenius norms over complex arrays."""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    d = a - b
    scale = max(1.0, math.sqrt(np.vdot(a, a).real), math.sqrt(np.vdot(b, b).real))
    return math.sqrt(np.vdot(d, d).real) / scale
