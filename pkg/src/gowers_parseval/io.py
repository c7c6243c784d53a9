"""JSON formats for functions, cubes and lattices, and the phase-polynomial parser.

Complex numbers are ``[re, im]`` pairs and value tables follow the
mixed-radix element order, so round trips are bit-exact.

    function: {"group": "2x3", "values": [[re, im], ...]}
    cube:     {"group": "5", "d": 2, "functions": [<values>, ...]}
    lattice:  {"k": 3, "generators": [[1, -2, 1]], "signature": [0, 0, 0]}
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .cubes import CubePoint
from .errors import InputFormatError
from .functions import FunctionCube, GroupFunction
from .groups import GroupSpec
from .lattice import IntLattice, as_signature
from .reports import complex_pair


def parse_group(text) -> GroupSpec:
    try:
        return GroupSpec.parse(str(text))
    except (ValueError, TypeError) as exc:
        raise InputFormatError(f"bad group spec {text!r}: {exc}") from exc


def _values(raw, what: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{what}: values must be numbers or [re, im] pairs") from exc
    if arr.ndim == 1:
        return arr.astype(np.complex128)
    if arr.ndim == 2 and arr.shape[1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    raise InputFormatError(f"{what}: expected a list of [re, im] pairs, got shape {arr.shape}")


def function_to_json(f: GroupFunction) -> dict:
    out = {"group": str(f.spec), "values": [complex_pair(v) for v in f.values]}
    if f.dual:
        out["dual"] = True
    return out


def function_from_json(obj, group: GroupSpec | None = None) -> GroupFunction:
    if not isinstance(obj, dict) or "values" not in obj:
        raise InputFormatError("a function must be an object with 'group' and 'values'")
    spec = parse_group(obj["group"]) if "group" in obj else group
    if spec is None:
        raise InputFormatError("function has no 'group'")
    try:
        return GroupFunction(spec, _values(obj["values"], "function"), dual=bool(obj.get("dual", False)))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def cube_to_json(F: FunctionCube) -> dict:
    return {
        "group": str(F.spec),
        "d": F.d,
        "functions": [[complex_pair(v) for v in f.values] for f in F.entries],
    }


def cube_from_json(obj) -> FunctionCube:
    if not isinstance(obj, dict) or "functions" not in obj or "group" not in obj:
        raise InputFormatError("a cube must be an object with 'group', 'd' and 'functions'")
    spec = parse_group(obj["group"])
    entries = []
    for i, raw in enumerate(obj["functions"]):
        raw = raw["values"] if isinstance(raw, dict) else raw
        try:
            entries.append(GroupFunction(spec, _values(raw, f"function {i}")))
        except ValueError as exc:
            raise InputFormatError(str(exc)) from exc
    try:
        F = FunctionCube(entries)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc
    if "d" in obj and int(obj["d"]) != F.d:
        raise InputFormatError(f"cube declares d={obj['d']} but has {len(entries)} functions")
    return F


def functions_from_json(obj) -> list[GroupFunction]:
    """A list of function objects, or ``{"group", "functions": [...]}``."""
    if isinstance(obj, dict) and "functions" in obj:
        spec = parse_group(obj["group"]) if "group" in obj else None
        return [function_from_json(f if isinstance(f, dict) else {"values": f}, spec) for f in obj["functions"]]
    if isinstance(obj, list):
        return [function_from_json(f) for f in obj]
    raise InputFormatError("expected a list of functions")


def point_to_json(p: CubePoint) -> list[list[int]]:
    return p.to_list()


def point_from_json(obj, group: GroupSpec) -> CubePoint:
    try:
        return CubePoint(group, np.asarray(obj, dtype=np.int64).reshape(len(obj), group.rank))
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"bad cube point: {exc}") from exc


def lattice_to_json(L: IntLattice, signs=None) -> dict:
    return {"k": L.k, "generators": [list(g) for g in L.generators], "signature": list(as_signature(signs, L.k))}


def lattice_from_json(obj) -> tuple[IntLattice, tuple[int, ...]]:
    try:
        L = IntLattice(int(obj["k"]), tuple(tuple(g) for g in obj.get("generators", [])))
        return L, as_signature(obj.get("signature"), L.k)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad lattice description: {exc}") from exc


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc


# -- phase polynomials -----------------------------------------------------------

_TERM = re.compile(r"^(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?$")


def parse_polynomial(text: str) -> dict[int, int]:
    """Integer polynomial in ``x`` as ``{exponent: coefficient}``.

    Accepts terms like ``3x^2``, ``3*x^2``, ``-x``, ``7`` joined by ``+``/``-``.
    """
    src = text.replace(" ", "")
    if not src:
        raise InputFormatError("empty polynomial")
    if src[0] not in "+-":
        src = "+" + src
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]*)", src):
        m = _TERM.match(body)
        if not body or m is None or (not m.group(1) and not m.group(2)):
            raise InputFormatError(f"cannot parse term {sign}{body!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        exp = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[exp] = coeffs.get(exp, 0) + (coef if sign == "+" else -coef)
    if "".join(s + b for s, b in re.findall(r"([+-])([^+-]*)", src)) != src:
        raise InputFormatError(f"cannot parse polynomial {text!r}")
    return coeffs


def phase_polynomial(group, text: str) -> GroupFunction:
    """``x -> exp(2 pi i P(x) / N)`` on a cyclic group Z/N."""
    spec = parse_group(group) if not isinstance(group, GroupSpec) else group
    if spec.rank != 1:
        raise InputFormatError(f"phase polynomials need a cyclic group Z/N, got {spec}")
    n = spec.orders[0]
    coeffs = parse_polynomial(text)
    phases = [sum(c * pow(x, e, n) for e, c in coeffs.items()) % n for x in range(n)]
    return GroupFunction(spec, np.exp(2j * np.pi * np.array(phases) / n))
