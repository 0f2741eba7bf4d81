"""Numerical tolerances.

All defaults can be shifted at once through the ``FRAMECAST_TOL`` environment
variable, which replaces the base relative tolerance used by the SVD, polar,
Gram-Schmidt and frame checks (frame-bound checks use ten times it).
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

BASE_TOL = 1e-10
RANK_TOL = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


@dataclass(frozen=True)
class Tolerances:
    svd: float = BASE_TOL
    polar: float = BASE_TOL
    gs: float = BASE_TOL
    frame: float = BASE_TOL
    rank: float = RANK_TOL
    jacobi: float = JACOBI_TOL
    max_sweeps: int = MAX_SWEEPS
    coincide: float = 1e-8
    bounds: float = 1e-9

    @classmethod
    def from_env(cls, environ=None) -> "Tolerances":
        environ = os.environ if environ is None else environ
        raw = environ.get("FRAMECAST_TOL")
        if not raw:
            return cls()
        return cls().with_base(float(raw))

    def with_base(self, tol: float) -> "Tolerances":
        if not tol > 0:
            raise ValueError(f"tolerance must be positive, got {tol!r}")
        return replace(self, svd=tol, polar=tol, gs=tol, frame=tol, bounds=10 * tol)

    def updated(self, mapping) -> "Tolerances":
        known = {f.name for f in fields(self)}
        unknown = set(mapping) - known
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return replace(self, **mapping)

    @classmethod
    def from_file(cls, path, base=None) -> "Tolerances":
        with open(path) as fh:
            data = json.load(fh)
        data = data.get("tolerances", data)
        return (base or cls.from_env()).updated(data)

    def as_dict(self):
        return asdict(self)
