"""Exact linear inequality systems over named variables.

An inequality ``sum(coeffs[v] * v) <= rhs`` has rational coefficients; in
the angle systems every constant is a multiple of pi and ``rhs`` is stored
in pi-units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def fraction_str(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinIneq:
    coeffs: tuple[tuple[str, Fraction], ...]
    rhs: Fraction

    @classmethod
    def make(cls, coeffs, rhs):
        merged = {}
        for name, value in dict(coeffs).items():
            q = to_fraction(value)
            if q:
                merged[name] = merged.get(name, 0) + q
        return cls(tuple(sorted((k, v) for k, v in merged.items() if v)), to_fraction(rhs)).canonical()

    def canonical(self):
        """Scale by a positive factor to coprime integers; drop zero coefficients.

        Only positive scaling is allowed, so the sign pattern is preserved.
        """
        items = [(k, v) for k, v in self.coeffs if v]
        values = [v for _, v in items] + [self.rhs]
        if not items:
            return LinIneq((), Fraction((self.rhs > 0) - (self.rhs < 0)))
        den = math.lcm(*(v.denominator for v in values))
        nums = [int(v * den) for v in values]
        g = math.gcd(*nums)
        scaled = [Fraction(x, g) for x in nums]
        return LinIneq(tuple(sorted((k, s) for (k, _), s in zip(items, scaled))), scaled[-1])

    @property
    def coeff_map(self):
        return dict(self.coeffs)

    def coeff(self, name):
        for k, v in self.coeffs:
            if k == name:
                return v
        return Fraction(0)

    def lhs(self, point):
        return sum((v * point[k] for k, v in self.coeffs), Fraction(0))

    def holds(self, point):
        return self.lhs(point) <= self.rhs

    def is_trivial(self):
        return not self.coeffs and self.rhs >= 0

    def key(self, variables):
        c = self.coeff_map
        return (len(self.coeffs), tuple(-c.get(v, 0) for v in variables), self.rhs)

    def to_json(self):
        return {"coeffs": {k: fraction_str(v) for k, v in self.coeffs}, "rhs": fraction_str(self.rhs)}

    @classmethod
    def from_json(cls, data):
        return cls.make(data["coeffs"], data["rhs"])

    def __str__(self):
        terms = []
        for k, v in self.coeffs:
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            terms.append(f"{sign} {k}" if mag == 1 else f"{sign} {fraction_str(mag)}*{k}")
        lhs = " ".join(terms).lstrip("+ ") if terms else "0"
        return f"{lhs} <= {fraction_str(self.rhs)}"


@dataclass(frozen=True)
class LinSystem:
    """Canonical system: every inequality canonical, no duplicates, sorted."""

    variables: tuple[str, ...]
    ineqs: tuple[LinIneq, ...]

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        declared = set(variables)
        seen = {}
        for q in self.ineqs:
            q = q.canonical()
            unknown = {k for k, _ in q.coeffs} - declared
            if unknown:
                raise ValueError(f"undeclared variables {sorted(unknown)}")
            if q.is_trivial():
                continue
            seen[q] = None
        ordered = tuple(sorted(seen, key=lambda q: q.key(variables)))
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "ineqs", ordered)

    def __len__(self):
        return len(self.ineqs)

    def satisfied_by(self, point):
        return all(q.holds(point) for q in self.ineqs)

    def violations(self, point):
        return [q for q in self.ineqs if not q.holds(point)]

    def matrix(self, variables=None):
        """Dense ``(A, b)`` in the given variable order."""
        variables = self.variables if variables is None else variables
        A = [[q.coeff(v) for v in variables] for q in self.ineqs]
        return A, [q.rhs for q in self.ineqs]

    def to_json(self):
        return {"vars": list(self.variables), "ineqs": [q.to_json() for q in self.ineqs]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["vars"]), tuple(LinIneq.from_json(q) for q in data["ineqs"]))


def expand_abs(abs_terms, linear, rhs):
    """Expand ``sum |t_k| + linear <= rhs`` into ``2**len(abs_terms)`` linear inequalities.

    Each term is ``(coeffs, const)`` meaning ``sum(coeffs[v] v) + const``.
    """
    lin_coeffs, lin_const = linear if linear is not None else ({}, 0)
    out = []
    for signs in product((1, -1), repeat=len(abs_terms)):
        coeffs = {k: to_fraction(v) for k, v in lin_coeffs.items()}
        const = to_fraction(lin_const)
        for s, (tc, tk) in zip(signs, abs_terms):
            for k, v in tc.items():
                coeffs[k] = coeffs.get(k, 0) + s * to_fraction(v)
            const += s * to_fraction(tk)
        out.append(LinIneq.make(coeffs, to_fraction(rhs) - const))
    return out
