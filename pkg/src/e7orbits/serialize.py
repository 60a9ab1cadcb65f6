"""JSON encodings for scalars, Jordan elements, Freudenthal vectors and e7 elements.

Complex numbers are ``[re, im]``; in exact mode the parts are ``"p/q"`` strings.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .freudenthal import FreudenthalVector, LieElement
from .jordan import DIM, JordanElement, JordanOperator
from .octonion import Octonion
from .scalars import format_scalar, parse_scalar

MODES = ("exact", "float")


class ParseError(ValueError):
    pass


def _mode_of(exact_mode: bool) -> str:
    return "exact" if exact_mode else "float"


def octonion_to_obj(o: Octonion) -> list:
    return [format_scalar(v) for v in o.c]


def octonion_from_obj(obj, exact_mode: bool) -> Octonion:
    if not isinstance(obj, list) or len(obj) != 8:
        raise ParseError("a bioctonion is a list of 8 complex numbers")
    vals = [parse_scalar(v, exact_mode) for v in obj]
    return Octonion(np.array(vals, dtype=object if exact_mode else complex))


def jordan_to_obj(X: JordanElement) -> dict:
    return {"d": [format_scalar(v) for v in X.c[:3]],
            "x": [octonion_to_obj(o) for o in X.x]}


def jordan_from_obj(obj, exact_mode: bool) -> JordanElement:
    try:
        d = [parse_scalar(v, exact_mode) for v in obj["d"]]
        x = [octonion_from_obj(o, exact_mode) for o in obj["x"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed Jordan element: {exc}") from exc
    if len(d) != 3 or len(x) != 3:
        raise ParseError("a Jordan element has 3 diagonal entries and 3 bioctonions")
    coords = d + [v for o in x for v in o.c]
    if exact_mode:
        return JordanElement.exact(coords)
    return JordanElement(np.array(coords, dtype=complex))


def fv_to_obj(P: FreudenthalVector) -> dict:
    return {"X": jordan_to_obj(P.X), "Y": jordan_to_obj(P.Y),
            "xi": format_scalar(P.xi), "eta": format_scalar(P.eta)}


def fv_from_obj(obj, exact_mode: bool) -> FreudenthalVector:
    try:
        X = jordan_from_obj(obj["X"], exact_mode)
        Y = jordan_from_obj(obj["Y"], exact_mode)
        xi = parse_scalar(obj["xi"], exact_mode)
        eta = parse_scalar(obj["eta"], exact_mode)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed Freudenthal vector: {exc}") from exc
    return FreudenthalVector.from_parts(X, Y, xi, eta)


def _looks_exact(values) -> bool:
    def ok(v):
        if isinstance(v, list):
            return all(ok(w) for w in v)
        return isinstance(v, (int, str)) and not isinstance(v, bool)
    return all(ok(v) for v in values)


def _diag_value(v, exact_mode: bool):
    if isinstance(v, list):
        raise ParseError("diagonal entries are real numbers")
    if exact_mode:
        return Fraction(v) if isinstance(v, (int, str)) else Fraction(float(v))
    return float(Fraction(v)) if isinstance(v, str) else float(v)


def element_from_obj(obj) -> FreudenthalVector:
    """Parse an element file: ``{"mode", "element"}`` or ``{"diag": [r1, r2, r3, r]}``."""
    if not isinstance(obj, dict):
        raise ParseError("element file must be a JSON object")
    mode = obj.get("mode")
    if mode is not None and mode not in MODES:
        raise ParseError(f"mode must be one of {MODES}, got {mode!r}")
    if "diag" in obj:
        vals = obj["diag"]
        if not isinstance(vals, list) or len(vals) != 4:
            raise ParseError("diag needs four entries [r1, r2, r3, r]")
        exact_mode = (mode == "exact") if mode else _looks_exact(vals)
        try:
            r = [_diag_value(v, exact_mode) for v in vals]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad diag entry: {exc}") from exc
        return FreudenthalVector.normal_form(*r, exact_mode=exact_mode)
    if "element" not in obj:
        raise ParseError("element file needs an 'element' or 'diag' entry")
    return fv_from_obj(obj["element"], (mode or "float") == "exact")


def element_to_obj(P: FreudenthalVector) -> dict:
    return {"mode": _mode_of(P.is_exact), "element": fv_to_obj(P)}


def load_element(path) -> FreudenthalVector:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return element_from_obj(obj)


def dump_element(P: FreudenthalVector, path=None) -> str:
    text = json.dumps(element_to_obj(P))
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def matrix_to_obj(M: np.ndarray) -> list:
    """Row-major ``[re, im]`` pairs (float)."""
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_obj(obj) -> np.ndarray:
    a = np.asarray(obj, dtype=float)
    if a.ndim != 3 or a.shape[2] != 2:
        raise ParseError("matrix must be rows of [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def lie_to_obj(L: LieElement) -> dict:
    return {"phi": matrix_to_obj(L.phi.matrix), "A": jordan_to_obj(L.A.to_float()),
            "B": jordan_to_obj(L.B.to_float()), "nu": format_scalar(complex(L.nu))}


def lie_from_obj(obj) -> LieElement:
    phi = matrix_from_obj(obj["phi"])
    if phi.shape != (DIM, DIM):
        raise ParseError(f"phi must be {DIM}x{DIM}")
    return LieElement(JordanOperator.dense(phi), jordan_from_obj(obj["A"], False),
                      jordan_from_obj(obj["B"], False), parse_scalar(obj["nu"], False))
