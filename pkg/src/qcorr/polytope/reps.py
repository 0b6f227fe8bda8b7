"""H- and V-representations with exact rational entries."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..fme.linsys import LinIneq, LinSystem, fraction_str, to_fraction


def primitive(values, allow_flip=False):
    """Scale a rational vector by a positive factor to coprime integers.

    With ``allow_flip`` the first nonzero entry is also made positive
    (valid for equations, never for inequalities).
    """
    values = [to_fraction(v) for v in values]
    if not any(values):
        return tuple(Fraction(0) for _ in values)
    den = math.lcm(*(v.denominator for v in values))
    nums = [int(v * den) for v in values]
    g = math.gcd(*nums)
    if allow_flip and next(x for x in nums if x) < 0:
        g = -g
    return tuple(Fraction(x // g) for x in nums)


def _canon_ineq(a, b):
    vec = primitive(list(a) + [b])
    return tuple(vec[:-1]), vec[-1]


def default_names(dim):
    return tuple(f"x{i + 1}" for i in range(dim))


@dataclass(frozen=True)
class HPolytope:
    """``{x : a.x <= b for (a, b) in ineqs, e.x == f for (e, f) in equations}``."""

    dim: int
    ineqs: tuple = ()
    equations: tuple = ()
    variables: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        canon = {}
        for a, b in self.ineqs:
            if len(a) != self.dim:
                raise ValueError("coefficient vector has the wrong length")
            a, b = _canon_ineq(a, b)
            if not any(a) and b >= 0:
                continue
            canon[(a, b)] = None
        eqs = {}
        for a, b in self.equations:
            vec = primitive(list(a) + [b], allow_flip=True)
            if any(vec[:-1]):
                eqs[(tuple(vec[:-1]), vec[-1])] = None
        order = lambda ab: (sum(1 for v in ab[0] if v), tuple(-v for v in ab[0]), ab[1])
        object.__setattr__(self, "ineqs", tuple(sorted(canon, key=order)))
        object.__setattr__(self, "equations", tuple(sorted(eqs, key=order)))
        if self.variables is None:
            object.__setattr__(self, "variables", default_names(self.dim))
        elif len(self.variables) != self.dim:
            raise ValueError("variable names do not match the dimension")
        else:
            object.__setattr__(self, "variables", tuple(self.variables))

    @classmethod
    def from_system(cls, S: LinSystem):
        rows = [(tuple(q.coeff(v) for v in S.variables), q.rhs) for q in S.ineqs]
        return cls(len(S.variables), tuple(rows), (), S.variables)

    def to_system(self) -> LinSystem:
        out = []
        for a, b in self.all_inequalities():
            out.append(LinIneq.make(dict(zip(self.variables, a)), b))
        return LinSystem(self.variables, tuple(out))

    def all_inequalities(self):
        """Inequalities with each equation split into two."""
        out = list(self.ineqs)
        for a, b in self.equations:
            out.append((a, b))
            out.append((tuple(-v for v in a), -b))
        return out

    def contains(self, point, tol=0):
        """Membership of a (float or rational) point, with slack ``tol``."""
        for a, b in self.ineqs:
            if sum(float(c) * float(x) for c, x in zip(a, point)) > float(b) + tol:
                return False
        for a, b in self.equations:
            if abs(sum(float(c) * float(x) for c, x in zip(a, point)) - float(b)) > tol:
                return False
        return True

    def to_json(self):
        def row(a, b):
            return {"coeffs": {v: fraction_str(c) for v, c in zip(self.variables, a) if c},
                    "rhs": fraction_str(b)}
        data = {"vars": list(self.variables), "ineqs": [row(a, b) for a, b in self.ineqs]}
        if self.equations:
            data["equations"] = [row(a, b) for a, b in self.equations]
        return data

    @classmethod
    def from_json(cls, data):
        names = tuple(data["vars"])

        def parse(rows):
            out = []
            for r in rows:
                coeffs = {k: to_fraction(v) for k, v in r["coeffs"].items()}
                unknown = set(coeffs) - set(names)
                if unknown:
                    raise ValueError(f"undeclared variables {sorted(unknown)}")
                out.append((tuple(coeffs.get(v, Fraction(0)) for v in names), to_fraction(r["rhs"])))
            return tuple(out)

        return cls(len(names), parse(data.get("ineqs", [])), parse(data.get("equations", [])), names)


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: tuple

    def __post_init__(self):
        verts = set()
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError("vertex has the wrong length")
            verts.add(tuple(to_fraction(x) for x in v))
        object.__setattr__(self, "vertices", tuple(sorted(verts)))

    def __len__(self):
        return len(self.vertices)

    def to_json(self):
        return {"dim": self.dim, "vertices": [[fraction_str(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["dim"]), tuple(tuple(to_fraction(x) for x in v) for v in data["vertices"]))
