"""JSON and CSV persistence for frames, signals, matrices and reports.

Complex numbers are written as ``[re, im]`` pairs.  Python's float repr is
the shortest string that round-trips, so a write/read cycle is bit exact.
"""
from __future__ import annotations

import csv
import json
import math

import numpy as np

from . import __version__
from .errors import FramecastError
from .frames import Frame

SCHEMA_VERSION = "1.0"
KNOWN_SCHEMAS = {"1.0"}

__all__ = [
    "FrameFileError",
    "frame_to_dict",
    "frame_from_dict",
    "write_frame",
    "read_frame",
    "write_signal",
    "read_signal",
    "write_matrix_csv",
    "read_matrix_csv",
    "write_json",
    "report",
]


class FrameFileError(FramecastError, ValueError):
    """Malformed or unsupported file."""


def _pairs(vec):
    return [[float(z.real), float(z.imag)] for z in vec]


def _from_pairs(rows, where):
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FrameFileError(f"{where}: entries must be [re, im] pairs") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise FrameFileError(f"{where}: entries must be [re, im] pairs")
    # assigning parts keeps signed zeros that re + 1j * im would lose
    out = np.empty(arr.shape[:-1], dtype=np.complex128)
    out.real, out.imag = arr[..., 0], arr[..., 1]
    return out


def _clean(obj):
    # JSON has no inf/nan; numpy scalars and tuples are normalized here
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def frame_to_dict(frame, metadata=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": int(frame.dim),
        "vectors": [_pairs(v) for v in frame.vectors],
        "labels": _clean(list(frame.labels)) if frame.labels is not None else None,
        "metadata": _clean({"basis_note": frame.basis_note, **(metadata or {})}),
    }


def frame_from_dict(data):
    """Return ``(frame, metadata)``."""
    if not isinstance(data, dict):
        raise FrameFileError("frame file must hold a JSON object")
    version = data.get("schema_version")
    if version not in KNOWN_SCHEMAS:
        raise FrameFileError(f"unsupported schema_version {version!r}")
    try:
        dim = int(data["dim"])
        raw = data["vectors"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameFileError(f"frame file missing field: {exc}") from exc
    if not raw:
        raise FrameFileError("frame file has no vectors")
    for i, v in enumerate(raw):
        if len(v) != dim:
            raise FrameFileError(f"vector {i} has length {len(v)}, expected dim={dim}")
    vecs = _from_pairs(raw, "vectors")
    metadata = dict(data.get("metadata") or {})
    note = metadata.pop("basis_note", "")
    labels = data.get("labels")
    if labels is not None:
        labels = [tuple(l) if isinstance(l, list) else l for l in labels]
    try:
        frame = Frame(vecs, labels, note)
    except ValueError as exc:
        raise FrameFileError(str(exc)) from exc
    return frame, metadata


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(_clean(obj), fh, indent=1, sort_keys=True)
        fh.write("\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FrameFileError(f"{path}: invalid JSON ({exc})") from exc


def write_frame(path, frame, metadata=None):
    write_json(path, frame_to_dict(frame, metadata))


def read_frame(path):
    return frame_from_dict(_load_json(path))


def write_signal(path, values, metadata=None):
    write_json(path, {"schema_version": SCHEMA_VERSION,
                      "values": _pairs(np.asarray(values, dtype=complex)),
                      "metadata": metadata or {}})


def read_signal(path):
    data = _load_json(path)
    if not isinstance(data, dict) or data.get("schema_version") not in KNOWN_SCHEMAS:
        raise FrameFileError(f"{path}: not a signal file")
    return _from_pairs(data.get("values", []), "values")


def write_matrix_csv(path, mat):
    """Long-format CSV with header ``row,col,re,im``."""
    mat = np.asarray(mat, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "re", "im"])
        for (i, j), z in np.ndenumerate(mat):
            w.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])


def read_matrix_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise FrameFileError(f"{path}: empty matrix file")
    n_r = 1 + max(int(r["row"]) for r in rows)
    n_c = 1 + max(int(r["col"]) for r in rows)
    out = np.zeros((n_r, n_c), dtype=complex)
    for r in rows:
        out[int(r["row"]), int(r["col"])] = complex(float(r["re"]), float(r["im"]))
    return out


def checked(value, tol):
    """A numeric report entry paired with the tolerance it was checked against."""
    return {"value": value, "tolerance": tol}


def report(command, inputs, outputs):
    return {
        "command": command,
        "inputs_echo": inputs,
        "outputs": outputs,
        "tool_version": __version__,
    }
