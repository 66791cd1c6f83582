"""Bit-stable serialization of controllers and verification reports.

Documents are JSON with sorted keys, two-space indentation and a trailing
newline; floats print as Python's shortest round-trip decimals and complex
numbers as [re, im] pairs. Parsing then re-serializing a document
reproduces it byte for byte, which makes the artifacts diffable and the
format unambiguous to reimplement.

Schema version "1":

    schema_version      "1"
    gate                {name: str|null, matrix: MATRIX}
    params              {phases: [float], windings: [int], paper_order: bool}
    synthesis           {eigenphases: [float], diagonalizer: MATRIX,
                         omega_diag: [CPLX], w_diag: [CPLX],
                         controller: MATRIX, length: float}
    verification        {holonomy_error: float, closure_defect: float,
                         oracle: null | {deviation, steps, slope,
                                         anomalous, schedule, deviations}}

    MATRIX = {rows: int, cols: int, data: [CPLX]}  (row-major)
    CPLX   = [re, im]
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DimensionError
from .extremal import Controller, HolonomyReport
from .synth import SynthesisParams, SynthesisResult
from .verify import OracleReport

SCHEMA_VERSION = "1"


def encode_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def encode_matrix(m) -> dict:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"can only encode 2-D matrices, got ndim={a.ndim}")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [encode_complex(z) for z in a.reshape(-1)],
    }


def decode_matrix(obj: dict) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"malformed matrix object: {exc}") from exc
    if len(data) != rows * cols:
        raise DimensionError(
            f"matrix data length {len(data)} != rows*cols = {rows * cols}"
        )
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)


def controller_document(
    result: SynthesisResult,
    report: HolonomyReport,
    params: SynthesisParams,
    gate_name: str | None = None,
    paper_order: bool = False,
    oracle: OracleReport | None = None,
) -> dict:
    """Assemble the plain-dict document for one synthesis run."""
    oracle_obj = None
    if oracle is not None:
        slope = oracle.convergence_order_estimate
        oracle_obj = {
            "deviation": float(oracle.deviation),
            "steps": int(oracle.steps),
            "slope": None if np.isnan(slope) else float(slope),
            "anomalous": bool(oracle.anomalous),
            "schedule": [int(s) for s in oracle.schedule],
            "deviations": [float(d) for d in oracle.deviations],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "gate": {
            "name": gate_name,
            "matrix": encode_matrix(result.gate),
        },
        "params": {
            "phases": [float(p) for p in params.phases],
            "windings": [int(n) for n in params.windings],
            "paper_order": bool(paper_order),
        },
        "synthesis": {
            "eigenphases": [float(g) for g in result.eigenphases],
            "diagonalizer": encode_matrix(result.diagonalizer),
            "omega_diag": [encode_complex(z) for z in np.diag(result.omega_diag)],
            "w_diag": [encode_complex(z) for z in np.diag(result.w_diag)],
            "controller": encode_matrix(result.controller.matrix),
            "length": float(result.length),
        },
        "verification": {
            "holonomy_error": float(report.holonomy_error),
            "closure_defect": float(report.loop_defect),
            "oracle": oracle_obj,
        },
    }


def canonical_dumps(doc: dict) -> str:
    """Serialize with the canonical formatting (sorted keys, LF newline)."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def document_controller(doc: dict) -> tuple[Controller, np.ndarray]:
    """Rebuild the controller and target gate from a parsed document.

    Splits the stored generator into its omega and coupling blocks using
    the channel count, and rejects matrices whose lower blocks are not
    the mirror image the generator structure implies.
    """
    x = decode_matrix(doc["synthesis"]["controller"])
    k = len(doc["synthesis"]["eigenphases"])
    if x.shape[0] != x.shape[1] or x.shape[0] <= k:
        raise DimensionError(
            f"controller matrix shape {x.shape} inconsistent with k={k}"
        )
    mirror = float(np.linalg.norm(x[k:, :k] + x[:k, k:].conj().T))
    tail = float(np.linalg.norm(x[k:, k:]))
    if max(mirror, tail) > 1e-12:
        raise DimensionError(
            "stored generator is not in controller block form "
            f"(mirror defect {mirror:.3e}, tail norm {tail:.3e})"
        )
    gate = decode_matrix(doc["gate"]["matrix"])
    ctrl = Controller(omega=x[:k, :k], coupling=x[:k, k:])
    return ctrl, gate
