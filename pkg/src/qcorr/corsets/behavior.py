"""Full behaviors p(a,b|x,y) with +-1 outcomes and their correlators."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import NotNormalized, OutOfRange, SignallingDetected

OUTCOMES = (1, -1)


@dataclass(frozen=True)
class BehaviorTable:
    """``p[(a, b, x, y)]`` with ``a, b`` in ``{+1, -1}`` and 0-based settings."""

    n: int
    m: int
    p: dict

    def prob(self, a, b, x, y):
        return float(self.p.get((a, b, x, y), 0.0))

    def to_json(self):
        return {"n": self.n, "m": self.m,
                "p": {f"{a},{b},{x},{y}": v for (a, b, x, y), v in sorted(self.p.items())}}

    @classmethod
    def from_json(cls, data):
        p = {}
        for key, value in data["p"].items():
            a, b, x, y = (int(t) for t in key.split(","))
            if a not in OUTCOMES or b not in OUTCOMES:
                raise ValueError(f"outcomes must be +1/-1, got key {key!r}")
            p[(a, b, x, y)] = float(value)
        return cls(int(data["n"]), int(data["m"]), p)


@dataclass(frozen=True)
class FullCorrelator:
    cA: np.ndarray
    cB: np.ndarray
    c: np.ndarray


def _check(B: BehaviorTable):
    for key, v in B.p.items():
        a, b, x, y = key
        if not (0 <= x < B.n and 0 <= y < B.m):
            raise ValueError(f"setting out of range in {key}")
        if not -1e-12 <= v <= 1 + 1e-12:
            raise OutOfRange(f"probability {v} at {key} outside [0, 1]")
    for x, y in product(range(B.n), range(B.m)):
        total = sum(B.prob(a, b, x, y) for a, b in product(OUTCOMES, OUTCOMES))
        if abs(total - 1.0) > 1e-12:
            raise NotNormalized(f"p(.,.|{x},{y}) sums to {total}")


def correlators_from_behavior(B: BehaviorTable, tol=1e-9) -> FullCorrelator:
    """Marginal and joint correlators, after verifying no-signalling within ``tol``."""
    _check(B)
    worst = (0.0, None)
    pA = np.zeros((B.n, B.m, 2))
    pB = np.zeros((B.n, B.m, 2))
    for x, y in product(range(B.n), range(B.m)):
        for k, o in enumerate(OUTCOMES):
            pA[x, y, k] = sum(B.prob(o, b, x, y) for b in OUTCOMES)
            pB[x, y, k] = sum(B.prob(a, o, x, y) for a in OUTCOMES)
    for x, k in product(range(B.n), range(2)):
        for y, yp in product(range(B.m), repeat=2):
            dev = abs(pA[x, y, k] - pA[x, yp, k])
            if dev > worst[0]:
                worst = (dev, ("A", OUTCOMES[k], x, y, yp))
    for y, k in product(range(B.m), range(2)):
        for x, xp in product(range(B.n), repeat=2):
            dev = abs(pB[x, y, k] - pB[xp, y, k])
            if dev > worst[0]:
                worst = (dev, ("B", OUTCOMES[k], y, x, xp))
    if worst[0] > tol:
        raise SignallingDetected(f"no-signalling violated by {worst[0]:.3g} at {worst[1]}", worst)
    signs = np.array(OUTCOMES, dtype=float)
    cA = pA[:, 0, :] @ signs
    cB = pB[0, :, :] @ signs
    c = np.zeros((B.n, B.m))
    for x, y in product(range(B.n), range(B.m)):
        c[x, y] = sum(a * b * B.prob(a, b, x, y) for a, b in product(OUTCOMES, OUTCOMES))
    return FullCorrelator(cA, cB, c)
