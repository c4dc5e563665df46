"""Verification reports and their deterministic JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA = 1


@dataclass
class Check:
    name: str
    passed: bool
    max_error: float
    tol: float
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "max_error": self.max_error, "tol": self.tol}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


class Tracker:
    """Accumulates the worst error of one check over many samples.

    The operands of the worst sample are kept and serialized only if the
    check fails.
    """

    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.max_error = 0.0
        self.samples = 0
        self._worst = None

    def record(self, error, **operands):
        error = float(error)
        if math.isnan(error):
            error = math.inf
        self.samples += 1
        if self._worst is None or error > self.max_error:
            self.max_error = error
            self._worst = operands

    def check(self) -> Check:
        passed = self.samples > 0 and self.max_error <= self.tol
        cx = None
        if not passed:
            cx = {k: to_jsonable(v) for k, v in (self._worst or {}).items()}
        return Check(self.name, passed, self.max_error, self.tol, cx)


def gap_check(name: str, gap: float, threshold: float, tol: float, **operands) -> Check:
    """Positive phrasing of an expected violation: error is how far gap falls short."""
    t = Tracker(name, tol)
    t.record(max(0.0, threshold - gap), gap=gap, **operands)
    return t.check()


@dataclass
class VerificationReport:
    suite: str
    seed: int
    trials: int
    tol: float
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  seed {self.seed}  trials {self.trials}  tol {self.tol:g}"]
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.name}  max_error={c.max_error:.3e}  tol={c.tol:g}")
        lines.append("all checks passed" if self.passed else f"{len(self.failures())} check(s) failed")
        return "\n".join(lines)


def to_jsonable(x):
    """Numbers, arrays and library objects to plain JSON values; complex as [re, im]."""
    from .algebra import AlgebraElement
    from .groups import DElement, StarDElement, TElement
    from .spacetime import SpinPoincareElement

    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) + 0.0
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real) + 0.0, float(x.imag) + 0.0]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return [to_jsonable(v) for v in x] if x.ndim else to_jsonable(complex(x))
        return x.astype(float).tolist() if x.ndim else float(x)
    if isinstance(x, AlgebraElement):
        d = {"type": "algebra", "spec": x.spec.name, "coords": to_jsonable(x.coords)}
        if x.spec.has_matrix_form:
            d["matrix"] = to_jsonable(x.matrix())
        return d
    if isinstance(x, DElement):
        return {"type": "D", "B": _elem(x.B), "L": _elem(x.L)}
    if isinstance(x, TElement):
        return {"type": "T", "B": _elem(x.B), "L": _elem(x.L), "R": _elem(x.R)}
    if isinstance(x, StarDElement):
        return {"type": "starD", "H": _elem(x.H), "G": _elem(x.G), "hermitian": x.hermitian}
    if isinstance(x, SpinPoincareElement):
        return {"type": "spin", "H": to_jsonable(x.H), "Lambda": to_jsonable(x.Lam)}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return to_jsonable(x.to_dict())
    return repr(x)


def _elem(a):
    # group components: matrices when available, coordinates otherwise
    return to_jsonable(a.matrix() if a.spec.has_matrix_form else a.coords)


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == int(x) and abs(x) < 1e16:
        return "%.1f" % x
    return "%.17g" % x


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with fixed key order as given and floats at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    return dumps(to_jsonable(obj), indent, _level)
