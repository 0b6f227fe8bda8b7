"""Evaluators for the inequality families bounding quantum correlation sets.

Every residual is oriented so that ``residual >= 0`` means the inequality
holds. Angle-based evaluators work in radians, or exactly in pi-units
(``Fraction``) when called with ``exact=True`` on an angle matrix that
carries its exact form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import NamedTuple

import numpy as np

from ..errors import OutOfRange
from .angles import AngleMatrix, Correlation, to_angles


class Residual(NamedTuple):
    family: str
    indices: tuple
    value: float


def _angles(A):
    if isinstance(A, AngleMatrix):
        return A
    if isinstance(A, Correlation):
        return to_angles(A)
    return AngleMatrix(np.asarray(A, dtype=float))


def _table(A, exact):
    A = _angles(A)
    if exact:
        if A.pi_units is None:
            raise ValueError("angle matrix has no exact pi-unit form")
        return A.pi_units, Fraction(1)
    return A.radians, math.pi


def tlm_residual(A, x, xp, y, yp, exact=False):
    """``pi - |c_xy - c_x'y| - |c_xy' + c_x'y' - pi|`` on angles (0-based indices)."""
    a, half = _table(A, exact)
    return half - abs(a[x][y] - a[xp][y]) - abs(a[x][yp] + a[xp][yp] - half)


def arcsin_residual(C):
    """``pi - |asin E11 + asin E12 + asin E21 - asin E22|``, minimized over the minus-sign position."""
    E = np.asarray(C.c if isinstance(C, Correlation) else C, dtype=float)
    if E.shape != (2, 2):
        raise ValueError("arcsin inequality needs a 2x2 correlation")
    s = np.arcsin(np.clip(E.ravel(), -1.0, 1.0))
    best = math.inf
    for k in range(4):
        signs = np.ones(4)
        signs[k] = -1
        best = min(best, math.pi - abs(float(signs @ s)))
    return best


# Alice pairs entering the three absolute-value terms of the triple families
_TRIPLE_PAIRS = ((0, 1), (1, 2), (0, 2))
TRIPLE_FAMILIES = ("diff,diff,diff", "diff,sum,sum", "sum,diff,sum", "sum,sum,diff")


def triple_residual(A, family, y, yp, ybar, exact=False):
    a, half = _table(A, exact)
    total = 0
    for kind, (x1, x2), col in zip(family.split(","), _TRIPLE_PAIRS, (y, yp, ybar)):
        if kind == "diff":
            total += abs(a[x1][col] - a[x2][col])
        else:
            total += abs(a[x1][col] + a[x2][col] - half)
    return 2 * half - total


def lemma3_check(A, exact=False):
    """Residuals of every box, TLM-type and triple inequality for a 3x3 angle matrix."""
    a, half = _table(A, exact)
    if len(a) != 3 or len(a[0]) != 3:
        raise ValueError("expected a 3x3 angle matrix")
    out = []
    for x, y in product(range(3), repeat=2):
        out.append(Residual("box", (x, y), min(a[x][y], half - a[x][y])))
    for x, xp in permutations(range(3), 2):
        for y, yp in permutations(range(3), 2):
            out.append(Residual("tlm", (x, xp, y, yp), tlm_residual(A, x, xp, y, yp, exact)))
    for family in TRIPLE_FAMILIES:
        for idx in product(range(3), repeat=3):
            if idx[0] == idx[1] == idx[2]:
                continue
            out.append(Residual(family, idx, triple_residual(A, family, *idx, exact=exact)))
    return out


@dataclass
class Cor2mResult:
    member: bool
    violated: list = field(default_factory=list)
    saturated: list = field(default_factory=list)


def cor2m_member(C, tol=1e-9):
    """Exact membership test for two Alice settings and any number of Bob settings."""
    A = _angles(C)
    a = A.radians
    if a.shape[0] != 2:
        raise ValueError("cor2m membership needs n = 2")
    checks = []
    for x, y in product(range(2), range(a.shape[1])):
        label = f"c{x + 1}{y + 1}"
        checks.append((f"0 <= {label}", a[x, y]))
        checks.append((f"{label} <= pi", math.pi - a[x, y]))
    for i, j in combinations(range(a.shape[1]), 2):
        c1i, c1j, c2i, c2j = a[0, i], a[0, j], a[1, i], a[1, j]
        I, J = i + 1, j + 1
        exprs = {
            f"c1{J}+c2{I}+c2{J}-c1{I}": c1j + c2i + c2j - c1i,
            f"c1{I}+c2{I}+c2{J}-c1{J}": c1i + c2i + c2j - c1j,
            f"c1{I}+c1{J}+c2{J}-c2{I}": c1i + c1j + c2j - c2i,
            f"c1{I}+c1{J}+c2{I}-c2{J}": c1i + c1j + c2i - c2j,
        }
        for text, value in exprs.items():
            checks.append((f"0 <= {text}", value))
            checks.append((f"{text} <= 2pi", 2 * math.pi - value))
    violated = [(t, float(s)) for t, s in checks if s < -tol]
    saturated = [(t, float(s)) for t, s in checks if abs(s) <= tol]
    return Cor2mResult(not violated, violated, saturated)


def _check_unit(name, v):
    if not -1 - 1e-12 <= v <= 1 + 1e-12:
        raise OutOfRange(f"{name} = {v} outside [-1, 1]")


def _check_angle(name, v):
    if not -1e-12 <= v <= math.pi + 1e-12:
        raise OutOfRange(f"{name} = {v} outside [0, pi]")


def lemma1_residuals(C, alpha, beta, gamma, form="polynomial"):
    """Residuals of the three-unknown characterization of Cor(3,3), keyed by name.

    ``polynomial``: per Bob setting ``y``, the 4x4 determinant of the block
    ``X_y`` and its three 3x3 minors containing ``c_{.y}``; ``alpha``,
    ``beta``, ``gamma`` are correlations in [-1, 1].

    ``angle``: the linear triangle/perimeter inequalities in angle form plus
    the 4x4 determinant rewritten in angles; the unknowns are angles in
    [0, pi].
    """
    c = np.asarray(C.c if isinstance(C, Correlation) else C, dtype=float)
    if c.shape != (3, 3):
        raise ValueError("expected a 3x3 correlation")
    if np.any(np.abs(c) > 1 + 1e-12):
        raise OutOfRange("correlators must lie in [-1, 1]")
    out = {}
    if form == "polynomial":
        for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
            _check_unit(name, v)
        a, b, g = alpha, beta, gamma
        for y in range(3):
            c1, c2, c3 = c[:, y]
            out[f"y{y + 1}:det4"] = (
                1 - (c1 ** 2 + c2 ** 2 + c3 ** 2) - a ** 2 - b ** 2 - g ** 2
                + 2 * c1 * c2 * a + 2 * c1 * c3 * b + 2 * c2 * c3 * g + 2 * a * b * g
                + c3 ** 2 * a ** 2 + c2 ** 2 * b ** 2 + c1 ** 2 * g ** 2
                - 2 * c2 * c3 * a * b - 2 * c1 * c3 * a * g - 2 * c1 * c2 * b * g
            )
            out[f"y{y + 1}:gamma"] = 1 - c2 ** 2 - c3 ** 2 - g ** 2 + 2 * c2 * c3 * g
            out[f"y{y + 1}:beta"] = 1 - c1 ** 2 - c3 ** 2 - b ** 2 + 2 * c1 * c3 * b
            out[f"y{y + 1}:alpha"] = 1 - c1 ** 2 - c2 ** 2 - a ** 2 + 2 * c1 * c2 * a
        return {k: float(v) for k, v in out.items()}
    if form != "angle":
        raise ValueError(f"unknown form {form!r}")
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        _check_angle(name, v)
    ang = np.arccos(np.clip(c, -1.0, 1.0))
    aux = {"alpha": (alpha, 0, 1), "beta": (beta, 0, 2), "gamma": (gamma, 1, 2)}

    def triangle(prefix, t1, t2, t3):
        out[f"{prefix}:1"] = t2 + t3 - t1
        out[f"{prefix}:2"] = t1 + t3 - t2
        out[f"{prefix}:3"] = t1 + t2 - t3
        out[f"{prefix}:perimeter"] = 2 * math.pi - (t1 + t2 + t3)

    triangle("aux", alpha, beta, gamma)
    for y in range(3):
        for name, (t, i, j) in aux.items():
            triangle(f"y{y + 1}:{name}", t, ang[i, y], ang[j, y])
        s1, s2, s3 = np.sin(ang[:, y])
        k1, k2, k3 = c[:, y]
        da = math.cos(alpha) - k1 * k2
        db = math.cos(beta) - k1 * k3
        dg = math.cos(gamma) - k2 * k3
        out[f"y{y + 1}:det4"] = ((s1 * s2 * s3) ** 2 - (s3 * da) ** 2 - (s2 * db) ** 2
                                 - (s1 * dg) ** 2 + 2 * da * db * dg)
    return {k: float(v) for k, v in out.items()}
