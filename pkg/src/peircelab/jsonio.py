"""JSON wire formats shared by the CLI and the file interfaces.

Matrix JSON: ``{"rows": m, "cols": n, "data": [[re, im], ...]}`` row-major;
rejected when the lengths disagree.  Model descriptor JSON:
``{"kind": "rect"|"cstar"|"jbstar", "m": int, "n": int}``.  Subspace JSON is
a list of matrix documents whose orthonormality is re-verified on load.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import FormatError
from .models import TripleModel
from .subspaces import Subspace
from .witnesses import WitnessReport


def matrix_to_json(x: np.ndarray) -> dict:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2:
        raise FormatError("only matrices can be serialized")
    return {
        "rows": int(x.shape[0]),
        "cols": int(x.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in x.ravel()],
    }


def matrix_from_json(doc: Any) -> np.ndarray:
    if not isinstance(doc, dict):
        raise FormatError("matrix document must be an object")
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed matrix document: {exc}") from exc
    if rows < 1 or cols < 1:
        raise FormatError("matrix dimensions must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError(f"matrix data length {len(data) if isinstance(data, list) else '?'} "
                          f"does not equal rows*cols = {rows * cols}")
    out = np.empty(rows * cols, dtype=complex)
    for k, entry in enumerate(data):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise FormatError("matrix entries must be [re, im] pairs")
        out[k] = complex(float(entry[0]), float(entry[1]))
    mat = out.reshape(rows, cols)
    if not np.isfinite(mat).all():
        raise FormatError("matrix entries must be finite")
    return mat


def model_to_json(model: TripleModel) -> dict:
    return {"kind": model.kind, "m": int(model.m), "n": int(model.n)}


def model_from_json(doc: Any) -> TripleModel:
    if not isinstance(doc, dict):
        raise FormatError("model descriptor must be an object")
    try:
        kind = doc["kind"]
        n = int(doc["n"])
        m = int(doc.get("m", n))
        return TripleModel(kind, m, n)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed model descriptor: {exc}") from exc


def subspace_to_json(sub: Subspace) -> list:
    return [matrix_to_json(b) for b in sub.basis]


def subspace_from_json(doc: Any, model: TripleModel, tol: float = 1e-9) -> Subspace:
    if not isinstance(doc, list):
        raise FormatError("subspace document must be a list of matrices")
    mats = [matrix_from_json(d) for d in doc]
    for mat in mats:
        if mat.shape != model.shape:
            raise FormatError(f"subspace basis shape {mat.shape} does not fit the model")
    basis = (np.stack(mats) if mats
             else np.zeros((0,) + model.shape, dtype=complex))
    try:
        return Subspace(basis, tol, model)
    except ValueError as exc:
        raise FormatError(f"subspace basis rejected: {exc}") from exc


def witness_report_to_json(report: WitnessReport) -> dict:
    return {
        "witness": matrix_to_json(report.witness.element),
        "residuals": {k: float(v) for k, v in sorted(report.containment_residuals.items())},
        "positivity_margin": float(report.positivity_margin),
        "verified": bool(report.verified),
        "tol": float(report.tol),
        "seed": (int(report.seed) if report.seed is not None else 0),
    }


def combo_to_json(terms) -> list:
    return [{"coeff": float(c), "projection": matrix_to_json(p)} for c, p in terms]


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def parse_model_arg(arg: str) -> TripleModel:
    """Model descriptor given inline as JSON or as a path to a JSON file."""
    text = arg.strip()
    if text.startswith("{"):
        try:
            return model_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"inline model descriptor is not valid JSON: {exc}") from exc
    return model_from_json(load_json(arg))


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
