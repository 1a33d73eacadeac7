"""JSON schemas and deterministic serialization for the CLI.

Schemas:
  vector          {"m": int, "x": [reals]}
  hermitian       {"d": int, "re": [[..]], "im": [[..]]}
  lorentz map     {"n": int, "m": int, "matrix": [[..]]}
  kraus map       {"d1": int, "d2": int, "ops": [{"re": [[..]], "im": [[..]]}, ...]}
  pencil          {"m": int, "P": [[..]], "J": [[..]]}
  graph           {"rows": int, "cols": int, "edges": [[u, v], ...]}

Output floats are always formatted with 17 significant digits, lowercase and
locale independent, so identical inputs produce byte-identical output.
"""

import json

import numpy as np

from .errors import InvalidInputError
from .herm import HermitianMatrix
from .lorentz import LorentzVector, vector
from .maps import KrausMap, LorentzMap
from .pencil import SymmetricPencil
from .roof import ConicDecomposition, RoofResult


def format_float(v: float) -> str:
    if not np.isfinite(v):
        raise InvalidInputError(f"cannot serialize non-finite value {v!r}")
    return format(float(v), ".17g")


def dumps(obj) -> str:
    """JSON text with fixed float formatting (17 significant digits)."""
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise InvalidInputError(f"cannot serialize {type(obj).__name__}")


def _matrix(obj, key, rows=None, cols=None):
    try:
        a = np.array(obj[key], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed field {key!r}: {exc}") from exc
    if a.ndim != 2:
        raise InvalidInputError(f"field {key!r} must be a matrix")
    if rows is not None and a.shape != (rows, cols):
        raise InvalidInputError(f"field {key!r} must be {rows}x{cols}, got {a.shape}")
    return a


def vector_from_json(obj) -> LorentzVector:
    try:
        m = int(obj["m"])
        x = np.array(obj["x"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed vector object: {exc}") from exc
    if x.ndim != 1 or x.shape[0] != m:
        raise InvalidInputError("vector length does not match m")
    return vector(x)


def vector_to_json(v: LorentzVector) -> dict:
    return {"m": v.m, "x": list(v.x)}


def hermitian_from_json(obj) -> HermitianMatrix:
    try:
        d = int(obj["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed hermitian object: {exc}") from exc
    re = _matrix(obj, "re", d, d)
    im = _matrix(obj, "im", d, d)
    return HermitianMatrix(d=d, entries=re + 1j * im)


def hermitian_to_json(h: HermitianMatrix) -> dict:
    return {"d": h.d, "re": h.entries.real.tolist(), "im": h.entries.imag.tolist()}


def lorentz_map_from_json(obj) -> LorentzMap:
    try:
        n = int(obj["n"])
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed map object: {exc}") from exc
    return LorentzMap(n=n, m=m, matrix=_matrix(obj, "matrix", n, m))


def lorentz_map_to_json(u: LorentzMap) -> dict:
    return {"n": u.n, "m": u.m, "matrix": u.matrix.tolist()}


def kraus_from_json(obj) -> KrausMap:
    try:
        d1 = int(obj["d1"])
        d2 = int(obj["d2"])
        raw_ops = obj["ops"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed kraus object: {exc}") from exc
    if not isinstance(raw_ops, list) or not raw_ops:
        raise InvalidInputError("field 'ops' must be a nonempty list")
    ops = [_matrix(op, "re", d2, d1) + 1j * _matrix(op, "im", d2, d1) for op in raw_ops]
    return KrausMap.from_ops(ops)


def kraus_to_json(k: KrausMap) -> dict:
    return {
        "d1": k.d1,
        "d2": k.d2,
        "ops": [{"re": op.real.tolist(), "im": op.imag.tolist()} for op in k.ops],
    }


def pencil_from_json(obj) -> SymmetricPencil:
    try:
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed pencil object: {exc}") from exc
    return SymmetricPencil(m=m, P=_matrix(obj, "P", m, m), J=_matrix(obj, "J", m, m))


def _point_to_json(pt):
    if isinstance(pt, LorentzVector):
        return vector_to_json(pt)
    if isinstance(pt, HermitianMatrix):
        return hermitian_to_json(pt)
    return list(np.asarray(pt, dtype=float))


def decomposition_to_json(dec: ConicDecomposition):
    return [{"weight": float(w), "point": _point_to_json(pt)} for w, pt in dec.parts]


def roof_result_to_json(r: RoofResult) -> dict:
    out = {
        "value": r.value,
        "lambda_used": r.lambda_used,
        "eigenvalues": list(r.spectrum.eigenvalues) if r.spectrum is not None else None,
        "kind": r.kind.value,
    }
    if r.decomposition is not None:
        out["decomposition"] = decomposition_to_json(r.decomposition)
    return out


def load_file(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {path}: {exc}") from exc
