"""File formats: deterministic JSON, CSV export, and the complex-literal grammar.

JSON artifacts must be byte-identical across runs with the same inputs, so the
emitter here formats every float with 17 significant digits and preserves the
(deliberate) insertion order of keys.  Complex numbers serialize as [re, im]
pairs; matrices as {"rows", "cols", "entries"} in row-major order.
"""

from __future__ import annotations

import json
import math
import re

import numpy as np

from .algebra import HadamardMatrix
from .errors import InvalidArgumentError
from .infotheory import Ensemble
from .sic import hadamard_sic_family

FORMAT_VERSION = "1"


def format_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise InvalidArgumentError("cannot serialize non-finite float")
    return format(x, ".17g")


def _emit(obj, parts, indent, level):
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            parts.append(pad_in + json.dumps(str(key)) + ": ")
            _emit(value, parts, indent, level + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            parts.append("[]")
            return
        simple = all(isinstance(x, (bool, int, float, str, np.integer, np.floating)) for x in items)
        if simple and len(items) <= 8:
            parts.append("[" + ", ".join(_scalar(x) for x in items) + "]")
            return
        parts.append("[\n")
        for i, value in enumerate(items):
            parts.append(pad_in)
            _emit(value, parts, indent, level + 1)
            parts.append(",\n" if i < len(items) - 1 else "\n")
        parts.append(pad + "]")
    else:
        parts.append(_scalar(obj))


def _scalar(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    if isinstance(x, str):
        return json.dumps(x)
    if x is None:
        return "null"
    raise InvalidArgumentError(f"cannot serialize value of type {type(x).__name__}")


def dumps(obj, indent=2):
    """Deterministic JSON text: insertion-ordered keys, floats at 17 digits."""
    parts = []
    _emit(obj, parts, indent, 0)
    parts.append("\n")
    return "".join(parts)


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_csv(path, rows, header=None):
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(",".join(str(h) for h in header) + "\n")
        for row in rows:
            fh.write(",".join(_csv_cell(x) for x in row) + "\n")


def _csv_cell(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    return str(x)


def complex_to_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(pair):
    return complex(float(pair[0]), float(pair[1]))


def matrix_to_dict(arr):
    arr = np.asarray(arr, dtype=np.complex128)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "entries": [complex_to_pair(z) for z in arr.ravel()],
    }


def matrix_from_dict(data):
    rows, cols = int(data["rows"]), int(data["cols"])
    entries = [pair_to_complex(p) for p in data["entries"]]
    if len(entries) != rows * cols:
        raise InvalidArgumentError("matrix entry count does not match its shape")
    return np.array(entries, dtype=np.complex128).reshape(rows, cols)


def hadamard_to_dict(h):
    data = matrix_to_dict(h.matrix)
    data["is_real"] = bool(h.is_real)
    if h.is_real:
        data["signs"] = [int(s) for s in h.signs.ravel()]
    return data


def hadamard_from_dict(data):
    matrix = matrix_from_dict(data)
    h = HadamardMatrix.from_array(matrix)
    if data.get("is_real") and not h.is_real:
        raise InvalidArgumentError("matrix flagged real does not have +-1 entries")
    return h


def family_to_dict(fam):
    return {
        "d": fam.d,
        "v": complex_to_pair(fam.v),
        "admissible": bool(fam.admissible),
        "hadamard": hadamard_to_dict(fam.hadamard),
        "vectors": [
            {"j": vec.j, "k": vec.k, "coords": [complex_to_pair(z) for z in vec.coords]}
            for vec in fam.vectors
        ],
    }


def family_from_dict(data):
    hadamard = hadamard_from_dict(data["hadamard"])
    fam = hadamard_sic_family(hadamard, pair_to_complex(data["v"]))
    for vec, stored in zip(fam.vectors, data["vectors"]):
        coords = np.array([pair_to_complex(p) for p in stored["coords"]])
        if vec.j != int(stored["j"]) or vec.k != int(stored["k"]):
            raise InvalidArgumentError("vector labels are out of order")
        if np.abs(coords - vec.coords).max() > 1e-12:
            raise InvalidArgumentError(f"stored vector ({vec.j},{vec.k}) disagrees with construction")
    return fam


def load_family(path):
    return family_from_dict(load_json(path))


def save_family(fam, path):
    dump_json(family_to_dict(fam), path)


def state_to_dict(state):
    state = np.asarray(state, dtype=np.complex128)
    if state.ndim == 1:
        return {"kind": "pure", "coords": [complex_to_pair(z) for z in state]}
    return {"kind": "mixed", "matrix": matrix_to_dict(state)}


def state_from_dict(data):
    if data["kind"] == "pure":
        return np.array([pair_to_complex(p) for p in data["coords"]], dtype=np.complex128)
    if data["kind"] == "mixed":
        return matrix_from_dict(data["matrix"])
    raise InvalidArgumentError(f"unknown state kind {data['kind']!r}")


def ensemble_to_dict(ensemble):
    return {
        "weights": [float(w) for w in ensemble.weights],
        "states": [state_to_dict(s) for s in ensemble.states],
    }


def ensemble_from_dict(data):
    return Ensemble(
        weights=np.array([float(w) for w in data["weights"]]),
        states=tuple(state_from_dict(s) for s in data["states"]),
    )


_TOKEN = re.compile(r"\s*(sqrt3|\d+\.\d*|\.\d+|\d+|[ij()+\-*/])")


def parse_complex(text):
    """Parse a complex literal such as ``-1+2i``, ``(1+sqrt3)(1+i)/2`` or ``0``.

    Grammar: +, -, *, / and parentheses over decimal numbers, the imaginary
    unit ``i`` (``j`` accepted), and the token ``sqrt3``; adjacency means
    multiplication, so the admissible d=2 and d=3 parameters can be written
    without decimal drift.
    """
    tokens = []
    pos = 0
    src = text.strip().lower()
    if not src:
        raise InvalidArgumentError("empty complex literal")
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise InvalidArgumentError(f"bad complex literal {text!r} at position {pos}")
        tokens.append(m.group(1))
        pos = m.end()

    state = {"i": 0}

    def peek():
        return tokens[state["i"]] if state["i"] < len(tokens) else None

    def advance():
        state["i"] += 1

    def parse_expr():
        value = parse_term()
        while peek() in ("+", "-"):
            op = peek()
            advance()
            rhs = parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term():
        value = parse_factor()
        while True:
            nxt = peek()
            if nxt in ("*", "/"):
                advance()
                rhs = parse_factor()
                value = value * rhs if nxt == "*" else value / rhs
            elif nxt is not None and nxt not in ("+", "-", ")", "*", "/"):
                value = value * parse_factor()  # implicit multiplication
            else:
                return value

    def parse_factor():
        sign = 1.0
        while peek() in ("+", "-"):
            if peek() == "-":
                sign = -sign
            advance()
        return sign * parse_atom()

    def parse_atom():
        tok = peek()
        if tok is None:
            raise InvalidArgumentError(f"truncated complex literal {text!r}")
        if tok == "(":
            advance()
            value = parse_expr()
            if peek() != ")":
                raise InvalidArgumentError(f"unbalanced parentheses in {text!r}")
            advance()
            return value
        if tok in ("i", "j"):
            advance()
            return 1j
        if tok == "sqrt3":
            advance()
            value = complex(math.sqrt(3.0))
        else:
            advance()
            value = complex(float(tok))
        # a trailing i/j or sqrt3 binds tightly: 2i, sqrt3i
        while peek() in ("i", "j", "sqrt3"):
            value = value * (1j if peek() in ("i", "j") else math.sqrt(3.0))
            advance()
        return value

    value = parse_expr()
    if state["i"] != len(tokens):
        raise InvalidArgumentError(f"trailing input in complex literal {text!r}")
    return value


def format_complex(z):
    z = complex(z)
    re_part = format_float(z.real)
    im_part = format_float(abs(z.imag))
    sign = "+" if z.imag >= 0 else "-"
    return f"{re_part}{sign}{im_part}i"
