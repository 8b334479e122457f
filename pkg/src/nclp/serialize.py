"""JSON encodings for the toolkit's objects.

Complex scalars are {"re": a, "im": b} (plain numbers are accepted on read
and taken as real).  Matrices are nested row arrays; a flat list in row-major
order is also accepted.  Exponents serialize as numbers, with infinity as
the string "inf".
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import AlgebraElement, MultiMatrixAlgebra
from .errors import UsageError
from .isometry import Decomposition, RawIsometry, StructuredIsometry, synthesize, to_raw
from .jordan import JordanMap
from .lpspace import LpVector

BASIS_DOC = "block-major, row-major within blocks"


def _c(z: complex) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _parse_c(doc: Any) -> complex:
    if isinstance(doc, (int, float)):
        return complex(doc)
    if isinstance(doc, dict) and "re" in doc:
        return complex(float(doc["re"]), float(doc.get("im", 0.0)))
    raise UsageError(f"not a complex scalar: {doc!r}")


def _matrix_to_json(m: np.ndarray) -> list:
    return [[_c(z) for z in row] for row in np.asarray(m)]


def _matrix_from_json(doc: Any, rows: int, cols: int) -> np.ndarray:
    if not isinstance(doc, list):
        raise UsageError("matrix must be a JSON array")
    if len(doc) == rows * cols and not any(isinstance(r, list) for r in doc):
        flat = [_parse_c(z) for z in doc]  # flat row-major
        return np.array(flat, dtype=np.complex128).reshape(rows, cols)
    if len(doc) != rows:
        raise UsageError(f"matrix has {len(doc)} rows, expected {rows}")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for r, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != cols:
            raise UsageError(f"matrix row {r} is not an array of length {cols}")
        out[r] = [_parse_c(z) for z in row]
    return out


def _p_to_json(p: float) -> Any:
    return "inf" if p == math.inf else float(p)


def _p_from_json(doc: Any) -> float:
    if doc == "inf":
        return math.inf
    if isinstance(doc, (int, float)):
        return float(doc)
    raise UsageError(f"not an exponent: {doc!r}")


def algebra_to_json(algebra: MultiMatrixAlgebra) -> dict:
    return {"blocks": [{"dim": b.dim, "weight": b.weight} for b in algebra.blocks]}


def algebra_from_json(doc: Any) -> MultiMatrixAlgebra:
    try:
        blocks = doc["blocks"]
        return MultiMatrixAlgebra.from_dims(
            [int(b["dim"]) for b in blocks], [float(b["weight"]) for b in blocks]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad algebra descriptor: {exc}")


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "algebra": algebra_to_json(x.algebra),
        "blocks": [_matrix_to_json(m) for m in x.data],
    }


def element_from_json(doc: Any) -> AlgebraElement:
    algebra = algebra_from_json(doc.get("algebra") if isinstance(doc, dict) else None)
    mats = doc.get("blocks")
    if not isinstance(mats, list) or len(mats) != algebra.n_blocks:
        raise UsageError(f"element must carry {algebra.n_blocks} block matrices")
    data = tuple(_matrix_from_json(m, n, n) for m, n in zip(mats, algebra.dims))
    return AlgebraElement(algebra, data)


def vector_to_json(xi: LpVector) -> dict:
    doc = element_to_json(xi.element)
    doc["p"] = _p_to_json(xi.p)
    return doc


def vector_from_json(doc: Any) -> LpVector:
    if not isinstance(doc, dict) or "p" not in doc:
        raise UsageError("vector document lacks an exponent field")
    return LpVector(element_from_json(doc), _p_from_json(doc["p"]))


def jordan_to_json(j: JordanMap) -> dict:
    return {
        "source": algebra_to_json(j.source),
        "target": algebra_to_json(j.target),
        "sigma": list(j.sigma),
        "blocks": [
            {"unitary": _matrix_to_json(u), "anti": bool(a)}
            for u, a in zip(j.unitaries, j.anti)
        ],
    }


def jordan_from_json(doc: Any) -> JordanMap:
    if not isinstance(doc, dict):
        raise UsageError("Jordan map document must be an object")
    try:
        source = algebra_from_json(doc["source"])
        target = algebra_from_json(doc["target"])
        sigma = tuple(int(s) for s in doc["sigma"])
        blocks = doc["blocks"]
    except KeyError as exc:
        raise UsageError(f"Jordan map document lacks field {exc}")
    if not isinstance(blocks, list) or len(blocks) != source.n_blocks:
        raise UsageError(f"Jordan map must carry {source.n_blocks} block entries")
    unitaries = []
    anti = []
    for i, b in enumerate(blocks):
        n = source.dims[i]
        unitaries.append(_matrix_from_json(b["unitary"], n, n))
        anti.append(bool(b.get("anti", False)))
    return JordanMap(source, target, sigma, tuple(unitaries), tuple(anti))


def isometry_to_json(t: RawIsometry | StructuredIsometry) -> dict:
    raw = to_raw(t)
    return {
        "p": _p_to_json(raw.p),
        "source": algebra_to_json(raw.source),
        "target": algebra_to_json(raw.target),
        "matrix": _matrix_to_json(raw.matrix),
        "basis": BASIS_DOC,
    }


def isometry_from_json(doc: Any) -> RawIsometry:
    if not isinstance(doc, dict):
        raise UsageError("isometry document must be an object")
    try:
        p = _p_from_json(doc["p"])
        source = algebra_from_json(doc["source"])
        target = algebra_from_json(doc["target"])
        matrix = _matrix_from_json(doc["matrix"], target.dim, source.dim)
    except KeyError as exc:
        raise UsageError(f"isometry document lacks field {exc}")
    return RawIsometry(p, source, target, matrix)


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "p": _p_to_json(dec.p),
        "w": element_to_json(dec.w),
        "jordan": jordan_to_json(dec.jordan),
        "residual": float(dec.residual),
    }


def decomposition_from_json(doc: Any) -> Decomposition:
    if not isinstance(doc, dict):
        raise UsageError("decomposition document must be an object")
    try:
        p = _p_from_json(doc["p"])
        w = element_from_json(doc["w"])
        jordan = jordan_from_json(doc["jordan"])
        residual = float(doc.get("residual", 0.0))
    except KeyError as exc:
        raise UsageError(f"decomposition document lacks field {exc}")
    return Decomposition(w, jordan, p, residual)


def decomposition_to_isometry(dec: Decomposition) -> StructuredIsometry:
    return synthesize(dec.jordan, dec.w, dec.p)


def write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")
