"""Quantum correlations from random unit vectors, and a search for points saturating each angle-inequality family."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angles import Correlation
from .inequalities import TRIPLE_FAMILIES, lemma3_check

FAMILIES = ("box", "tlm") + TRIPLE_FAMILIES


def unit_vectors(k, dim, rng):
    """``k`` independent uniform unit vectors in R^dim (normalized Gaussians)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    v = rng.standard_normal((k, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def correlation_from_vectors(U, V) -> Correlation:
    return Correlation(np.clip(np.asarray(U) @ np.asarray(V).T, -1.0, 1.0))


def sample_quantum(n, m, dim, seed) -> Correlation:
    """``c[x, y] = <u_x, v_y>`` for ``n + m`` random unit vectors; deterministic in ``seed``."""
    vecs = unit_vectors(n + m, dim, np.random.default_rng(seed))
    return correlation_from_vectors(vecs[:n], vecs[n:])


@dataclass(frozen=True)
class Saturation:
    family: str
    indices: tuple
    residual: float
    correlation: Correlation
    seed: int
    dim: int


def find_saturating(family, tol=1e-6, max_seeds=5000, interior=None):
    """First sampled quantum 3x3 point on which some inequality of ``family`` is tight within ``tol``.

    Box inequalities are tight only at ``|c| = 1``, so they are searched on
    one-dimensional (deterministic) samples. Every other family is searched
    on planar samples; with ``interior`` (the default for those families)
    the point must also keep every correlator strictly inside (-1, 1), which
    rules out the trivially tight deterministic points.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    dim = 1 if family == "box" else 2
    if interior is None:
        interior = family != "box"
    for seed in range(max_seeds):
        C = sample_quantum(3, 3, dim, seed)
        if interior and np.max(np.abs(C.c)) > 1 - tol:
            continue
        hits = [r for r in lemma3_check(C) if r.family == family]
        best = min(hits, key=lambda r: abs(r.value))
        if abs(best.value) <= tol:
            return Saturation(family, best.indices, float(best.value), C, seed, dim)
    return None
