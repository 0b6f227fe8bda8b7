"""Correlation matrices and their pairwise-angle coordinates ``arccos(c)``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import OutOfRange

RANGE_TOL = 1e-12
# angles (in pi-units) whose cosines are recognised as exact inputs
_SPECIAL = sorted({Fraction(k, 12) for k in range(13)} | {Fraction(k, 8) for k in range(9)})
_SPECIAL_COS = [(q, math.cos(math.pi * q)) for q in _SPECIAL]
_EXACT_TOL = 1e-14


@dataclass(frozen=True)
class Correlation:
    """Joint correlators ``c[x, y]`` with ``n`` Alice and ``m`` Bob settings."""

    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.ndim != 2 or 0 in c.shape:
            raise ValueError("correlation must be a non-empty 2-D array")
        if np.any(np.abs(c) > 1 + RANGE_TOL) or not np.all(np.isfinite(c)):
            raise OutOfRange("correlators must lie in [-1, 1]")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return self.c.shape[0]

    @property
    def m(self):
        return self.c.shape[1]

    def to_json(self):
        return {"n": self.n, "m": self.m, "c": self.c.tolist()}

    @classmethod
    def from_json(cls, data):
        c = np.array(data["c"], dtype=float)
        if c.shape != (int(data["n"]), int(data["m"])):
            raise ValueError(f"c has shape {c.shape}, expected ({data['n']}, {data['m']})")
        return cls(c)


@dataclass(frozen=True)
class AngleMatrix:
    """Angles in radians, plus an exact pi-unit form when every entry is a known special angle."""

    radians: np.ndarray
    pi_units: tuple | None = None

    @property
    def shape(self):
        return self.radians.shape

    @classmethod
    def from_pi_units(cls, rows):
        exact = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if any(not 0 <= v <= 1 for r in exact for v in r):
            raise OutOfRange("angles must lie in [0, pi]")
        rad = np.array([[math.pi * float(v) for v in r] for r in exact])
        return cls(rad, exact)


def _exact_angle(value):
    for q, cq in _SPECIAL_COS:
        if abs(value - cq) <= _EXACT_TOL:
            return q
    return None


def to_angles(C) -> AngleMatrix:
    c = C.c if isinstance(C, Correlation) else np.asarray(C, dtype=float)
    if np.any(np.abs(c) > 1 + RANGE_TOL):
        raise OutOfRange("correlators must lie in [-1, 1]")
    rad = np.arccos(np.clip(c, -1.0, 1.0))
    exact = [[_exact_angle(v) for v in row] for row in c]
    if all(q is not None for row in exact for q in row):
        return AngleMatrix(rad, tuple(tuple(r) for r in exact))
    return AngleMatrix(rad, None)


def from_angles(A) -> Correlation:
    rad = A.radians if isinstance(A, AngleMatrix) else np.asarray(A, dtype=float)
    if np.any(rad < -RANGE_TOL) or np.any(rad > math.pi + RANGE_TOL):
        raise OutOfRange("angles must lie in [0, pi]")
    return Correlation(np.clip(np.cos(rad), -1.0, 1.0))
