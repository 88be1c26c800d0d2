"""Reading and writing frame and fusion-frame data files.

A frame file is JSON shaped like::

    {"field": "real", "n": 2, "k": 3,
     "vectors": [[0.0, 1.0], [1.0, 1.0], [-1.0, 1.0]]}

``vectors`` holds the synthesis matrix column-major: one list per frame
vector.  Complex entries are written as ``[re, im]`` pairs.  A fusion file
replaces ``vectors`` with a list of subspaces, each carrying a column-major
``basis``; bases are orthonormalized on load, with a warning when the input
needed more than a cosmetic adjustment.
"""
from __future__ import annotations

import json
import warnings
from pathlib import Path

import numpy as np

from .core import COMPLEX, REAL, Frame, make_frame
from .errors import FrameFileError
from .fusion import FusionFrame, make_fusion_frame, orthonormalize

# Input bases further than this from orthonormal trigger a warning on load.
ADJUSTMENT_WARN_TOL = 1e-8


class BasisAdjustedWarning(UserWarning):
    """A stored subspace basis needed re-orthonormalization on load."""


def _parse_entry(entry, field: str, where: str):
    if field == COMPLEX:
        if isinstance(entry, (int, float)):
            return complex(entry)
        if (isinstance(entry, list) and len(entry) == 2
                and all(isinstance(x, (int, float)) for x in entry)):
            return complex(entry[0], entry[1])
        raise FrameFileError(
            f"{where}: complex entries must be numbers or [re, im] pairs")
    if isinstance(entry, (int, float)):
        return float(entry)
    raise FrameFileError(f"{where}: real entries must be plain numbers")


def _parse_columns(columns, n: int, field: str, where: str) -> np.ndarray:
    if not isinstance(columns, list) or not columns:
        raise FrameFileError(f"{where}: expected a non-empty list of columns")
    parsed = []
    for j, col in enumerate(columns):
        if not isinstance(col, list) or len(col) != n:
            raise FrameFileError(
                f"{where}: column {j} must be a list of {n} entries")
        parsed.append([_parse_entry(e, field, f"{where} column {j}")
                       for e in col])
    dtype = np.complex128 if field == COMPLEX else np.float64
    return np.array(parsed, dtype=dtype).T


def _payload_field(payload: dict) -> str:
    fld = payload.get("field")
    if fld not in (REAL, COMPLEX):
        raise FrameFileError('"field" must be "real" or "complex"')
    return fld


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise FrameFileError(f"{path}: expected a JSON object")
    return payload


def frame_from_payload(payload: dict) -> Frame:
    fld = _payload_field(payload)
    try:
        n, k = int(payload["n"]), int(payload["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameFileError('frame file needs integer "n" and "k"') from exc
    columns = payload.get("vectors")
    matrix = _parse_columns(columns, n, fld, "vectors")
    if matrix.shape != (n, k):
        raise FrameFileError(
            f"vector count {matrix.shape[1]} does not match k={k}")
    return make_frame(matrix)


def frame_to_payload(frame: Frame) -> dict:
    cols = []
    for j in range(frame.k):
        col = frame.vector(j)
        if frame.field == COMPLEX:
            cols.append([[float(e.real), float(e.imag)] for e in col])
        else:
            cols.append([float(e) for e in col])
    return {"field": frame.field, "n": frame.n, "k": frame.k, "vectors": cols}


def load_frame(path) -> Frame:
    return frame_from_payload(_load_json(path))


def save_frame(frame: Frame, path) -> None:
    Path(path).write_text(json.dumps(frame_to_payload(frame)) + "\n",
                          encoding="utf-8")


def fusion_from_payload(payload: dict, source: str = "fusion data") -> FusionFrame:
    fld = _payload_field(payload)
    try:
        n = int(payload["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameFileError('fusion file needs an integer "n"') from exc
    subs = payload.get("subspaces")
    if not isinstance(subs, list) or not subs:
        raise FrameFileError('fusion file needs a non-empty "subspaces" list')
    bases = []
    for i, entry in enumerate(subs):
        if not isinstance(entry, dict) or "basis" not in entry:
            raise FrameFileError(f'subspace {i} needs a "basis" key')
        matrix = _parse_columns(entry["basis"], n, fld, f"subspace {i}")
        q, adjustment = orthonormalize(matrix)
        if adjustment > ADJUSTMENT_WARN_TOL:
            warnings.warn(
                f"{source}: subspace {i} basis was re-orthonormalized "
                f"(adjustment {adjustment:.3e})", BasisAdjustedWarning,
                stacklevel=2)
        bases.append(q)
    return make_fusion_frame(bases)


def load_fusion_frame(path) -> FusionFrame:
    return fusion_from_payload(_load_json(path), source=str(path))


def fusion_to_payload(ff: FusionFrame) -> dict:
    subs = []
    for w in ff.subspaces:
        cols = []
        for j in range(w.dim):
            col = w.basis[:, j]
            if np.iscomplexobj(w.basis):
                cols.append([[float(e.real), float(e.imag)] for e in col])
            else:
                cols.append([float(e) for e in col])
        subs.append({"basis": cols})
    fld = COMPLEX if any(np.iscomplexobj(w.basis) for w in ff.subspaces) else REAL
    return {"n": ff.n, "field": fld, "subspaces": subs}


def save_fusion_frame(ff: FusionFrame, path) -> None:
    Path(path).write_text(json.dumps(fusion_to_payload(ff)) + "\n",
                          encoding="utf-8")
