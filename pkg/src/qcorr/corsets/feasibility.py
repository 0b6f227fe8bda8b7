"""Cor(3,3) membership by concave maximization over the three Alice-Alice inner products.

For a 3x3 correlation ``c`` and unknowns ``z = (alpha, beta, gamma)`` each
Bob setting ``y`` gives the 4x4 block

    X_y(z) = [[A(z), c[:, y]], [c[:, y]^T, 1]],
    A(z)   = [[1, alpha, beta], [alpha, 1, gamma], [beta, gamma, 1]].

``c`` is quantum iff some ``z`` in [-1, 1]^3 makes every block psd, so the
quantity to maximize is ``f(z) = min_y lambda_min(X_y(z))``, which is
concave. The search is a 21^3 grid, projected supergradient ascent from the
best grid points, and a log-barrier Newton polish that resolves optima on
the nonsmooth ridge to near machine precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..chordal import PartialSymMatrix, chordal_complete
from ..numkernel import cholesky_gram_vectors
from .angles import Correlation

MEMBER = "member"
NONMEMBER = "nonmember"
BOUNDARY = "boundary"

GRID_POINTS = 21
STEP0 = 0.2
STEP_DECAY = 0.97
STEP_MIN = 1e-10
POLISH_BAND = 1e-3
# Alice-Alice positions of alpha, beta, gamma inside each 4x4 block
_AUX = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class Cor33Witness:
    alpha: float
    beta: float
    gamma: float
    margin: float
    gram: np.ndarray
    vectors: np.ndarray

    def to_json(self):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
                "margin": self.margin, "gram": self.gram.tolist(),
                "vectors": self.vectors.tolist()}


@dataclass(frozen=True)
class Cor33Result:
    status: str
    margin: float
    point: tuple
    witness: Cor33Witness | None = None

    @property
    def is_member(self):
        """True for both ``member`` and ``boundary``."""
        return self.status != NONMEMBER


def blocks(c, Z):
    """Batch of blocks ``X_y`` with shape ``(len(Z), 3, 4, 4)``."""
    Z = np.atleast_2d(Z)
    base = np.broadcast_to(np.eye(4), (3, 4, 4)).copy()
    for y in range(3):
        base[y, :3, 3] = base[y, 3, :3] = c[:, y]
    X = np.repeat(base[None], Z.shape[0], axis=0)
    for col, (i, j) in enumerate(_AUX):
        X[:, :, i, j] = X[:, :, j, i] = Z[:, col, None]
    return X


def objective(c, Z):
    """``f`` evaluated at each row of ``Z``."""
    return np.linalg.eigvalsh(blocks(c, Z))[..., 0].min(axis=1)


def _supergradient_ascent(c, Z):
    """Projected supergradient ascent on a batch of starting points; returns the best point of each run."""
    Z = np.clip(np.array(Z, dtype=float), -1.0, 1.0)
    best_z, best_f = Z.copy(), np.full(len(Z), -np.inf)
    rows = np.arange(len(Z))
    step = STEP0
    while True:
        w, v = np.linalg.eigh(blocks(c, Z))
        f = w[..., 0].min(axis=1)
        better = f > best_f
        best_z[better], best_f[better] = Z[better], f[better]
        if step < STEP_MIN:
            return best_z, best_f
        active = np.argmin(w[..., 0], axis=1)
        u = v[rows, active, :, 0]
        g = np.stack([2 * u[:, i] * u[:, j] for i, j in _AUX], axis=1)
        norm = np.linalg.norm(g, axis=1, keepdims=True)
        Z = np.clip(Z + step * g / np.where(norm > 0, norm, 1.0), -1.0, 1.0)
        step *= STEP_DECAY


_DIRS = np.zeros((4, 4, 4))
for _k, (_i, _j) in enumerate(_AUX):
    _DIRS[_k, _i, _j] = _DIRS[_k, _j, _i] = 1.0
_DIRS[3] = -np.eye(4)


def _barrier_terms(c, w, mu):
    """Value, gradient and Hessian of the barrier function at ``w = (alpha, beta, gamma, t)``."""
    z, t = w[:3], w[3]
    if np.any(np.abs(z) >= 1):
        return math.inf, None, None
    X = blocks(c, z)[0] - t * np.eye(4)
    sign, logdet = np.linalg.slogdet(X)
    if np.any(sign <= 0):
        return math.inf, None, None
    value = -t / mu - logdet.sum() - np.sum(np.log1p(-z) + np.log1p(z))
    # prods[y, k] = X_y^{-1} D_k
    prods = np.einsum("yab,kbc->ykac", np.linalg.inv(X), _DIRS)
    grad = -np.einsum("ykaa->k", prods)
    grad[3] -= 1 / mu
    grad[:3] += 1 / (1 - z) - 1 / (1 + z)
    hess = np.einsum("ykab,ylba->kl", prods, prods)
    hess[:3, :3] += np.diag(1 / (1 - z) ** 2 + 1 / (1 + z) ** 2)
    return value, grad, hess


def _barrier_polish(c, z0, mu0=1e-2, mu_min=1e-13, shrink=0.2):
    """Maximize ``t`` subject to ``X_y(z) - t I`` psd by a log-barrier path; returns the visited ``z``."""
    z = np.clip(np.asarray(z0, dtype=float), -1 + 1e-6, 1 - 1e-6)
    t = float(objective(c, z)[0]) - 1e-3
    w = np.append(z, t)
    visited = [z.copy()]
    mu = mu0
    while mu >= mu_min:
        for _ in range(50):
            value, grad, hess = _barrier_terms(c, w, mu)
            if grad is None:
                break
            try:
                step = -np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError:
                break
            decrement = -grad @ step
            if decrement < 1e-12:
                break
            s = 1.0
            while s > 1e-12:
                trial = w + s * step
                tv = _barrier_terms(c, trial, mu)[0]
                if tv <= value - 0.25 * s * decrement:
                    break
                s *= 0.5
            else:
                break
            w = trial
        visited.append(w[:3].copy())
        mu *= shrink
    return np.array(visited)


def _witness(c, z, margin, tol):
    entries = [(i, j, float(z[k])) for k, (i, j) in enumerate(_AUX)]
    entries += [(x, 3 + y, float(c[x, y])) for x in range(3) for y in range(3)]
    P = PartialSymMatrix(6, tuple(entries))
    slack = max(tol, 0.0) + 1e-12
    gram = chordal_complete(P, tol=slack)
    vectors = cholesky_gram_vectors(gram, tol=slack)
    return Cor33Witness(float(z[0]), float(z[1]), float(z[2]), float(margin), gram, vectors)


def _classify(margin, tol):
    if abs(margin) <= tol:
        return BOUNDARY
    return MEMBER if margin > 0 else NONMEMBER


def cor33_feasibility(C, tol=1e-7, restarts=10, seed=0, witness=True, polish=None) -> Cor33Result:
    """Decide membership of a 3x3 correlation in Cor(3,3).

    ``margin`` is the best value of ``f`` found; the status is ``boundary``
    when ``|margin| <= tol``, otherwise ``member`` or ``nonmember`` by sign.
    Members and boundary points carry a Gram-matrix witness. The barrier
    polish runs when ``polish`` is true, or by default only when the ascent
    ends within ``POLISH_BAND`` of the boundary, where the status hinges on
    digits the ascent alone cannot deliver.
    """
    c = np.asarray(C.c if isinstance(C, Correlation) else C, dtype=float)
    if c.shape != (3, 3):
        raise ValueError("cor33_feasibility needs a 3x3 correlation")
    excess = float(np.max(np.abs(c))) - 1.0
    if excess > tol:
        return Cor33Result(NONMEMBER, -excess, (math.nan,) * 3)
    c = np.clip(c, -1.0, 1.0)

    axis = np.linspace(-1.0, 1.0, GRID_POINTS)
    grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    fg = objective(c, grid)
    rng = np.random.default_rng(seed)
    starts = [grid[np.argmax(fg)]]
    starts += list(rng.uniform(-1.0, 1.0, size=(max(restarts - 1, 0), 3)))
    Z, F = _supergradient_ascent(c, np.array(starts))
    candidates = [grid[np.argmax(fg)][None, :], Z]
    if polish is None:
        polish = F.max() < POLISH_BAND
    if polish:
        candidates.append(_barrier_polish(c, Z[np.argmax(F)]))
    cand = np.vstack(candidates)
    vals = objective(c, cand)
    best = int(np.argmax(vals))
    z, margin = cand[best], float(vals[best])
    status = _classify(margin, tol)
    wit = None
    if witness and status != NONMEMBER:
        wit = _witness(c, z, margin, tol)
    return Cor33Result(status, margin, tuple(float(v) for v in z), wit)


def restart_spread(C, restarts=10, seed=0):
    """Spread of ``max f`` across independent ascent runs from random starts."""
    c = np.clip(np.asarray(C.c if isinstance(C, Correlation) else C, dtype=float), -1, 1)
    starts = np.random.default_rng(seed).uniform(-1.0, 1.0, size=(restarts, 3))
    Z, F = _supergradient_ascent(c, starts)
    polished = [float(objective(c, _barrier_polish(c, z)).max()) for z in Z]
    finals = np.maximum(F, polished)
    return float(finals.max() - finals.min())
