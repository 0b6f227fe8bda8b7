"""The named angle systems, written in pi-units with absolute values expanded.

Variable ``c{x}{y}`` is the angle ``arccos(c_xy) / pi`` for settings
``x, y`` counted from 1; ``alpha``, ``beta``, ``gamma`` are the angles of
the three unknown Alice-Alice correlations.
"""
from itertools import combinations, product

from ..errors import UnknownName
from .linsys import LinIneq, LinSystem, expand_abs

AUX = ("alpha", "beta", "gamma")
# aux variable -> the pair of Alice settings it couples
AUX_PAIRS = {"alpha": (1, 2), "beta": (1, 3), "gamma": (2, 3)}


def cvar(x, y):
    return f"c{x}{y}"


def angle_vars(n=3, m=3):
    return tuple(cvar(x, y) for x in range(1, n + 1) for y in range(1, m + 1))


def bounds(variables):
    out = []
    for v in variables:
        out.append(LinIneq.make({v: 1}, 1))
        out.append(LinIneq.make({v: -1}, 0))
    return out


def triangle(a, b, c):
    """The 3x3 elliptope in angle form: triangle inequalities plus perimeter <= 2."""
    return [
        LinIneq.make({a: 1, b: -1, c: -1}, 0),
        LinIneq.make({a: -1, b: 1, c: -1}, 0),
        LinIneq.make({a: -1, b: -1, c: 1}, 0),
        LinIneq.make({a: 1, b: 1, c: 1}, 2),
    ]


def _diff(p, q):
    """``|p - q|`` term."""
    return ({p: 1, q: -1}, 0) if p != q else ({}, 0)


def _sum(p, q):
    """``|p + q - 1|`` term (pi-units)."""
    return ({p: 1, q: 1}, -1) if p != q else ({p: 2}, -1)


def tlm_ineqs(x, xp, y, yp):
    """``|c_xy - c_x'y| + |c_xy' + c_x'y' - 1| <= 1``."""
    return expand_abs([_diff(cvar(x, y), cvar(xp, y)), _sum(cvar(x, yp), cvar(xp, yp))], None, 1)


TRIPLE_FAMILIES = {
    "diff,diff,diff": (_diff, _diff, _diff),
    "diff,sum,sum": (_diff, _sum, _sum),
    "sum,diff,sum": (_sum, _diff, _sum),
    "sum,sum,diff": (_sum, _sum, _diff),
}


def triple_ineqs(family, y, yp, ybar):
    """``T(c_1y, c_2y) + T(c_2y', c_3y') + T(c_1ybar, c_3ybar) <= 2`` for the family's term types."""
    f1, f2, f3 = TRIPLE_FAMILIES[family]
    terms = [f1(cvar(1, y), cvar(2, y)), f2(cvar(2, yp), cvar(3, yp)), f3(cvar(1, ybar), cvar(3, ybar))]
    return expand_abs(terms, None, 2)


def cor33_angles():
    variables = angle_vars() + AUX
    ineqs = bounds(variables) + triangle(*AUX)
    for y in range(1, 4):
        for aux in AUX:
            i, j = AUX_PAIRS[aux]
            ineqs += triangle(aux, cvar(i, y), cvar(j, y))
    return variables, ineqs


def tlm_full():
    variables = angle_vars()
    ineqs = bounds(variables)
    for x, xp, y, yp in product(range(1, 4), repeat=4):
        ineqs += tlm_ineqs(x, xp, y, yp)
    return variables, ineqs


def lemma2():
    variables, ineqs = tlm_full()
    for family in TRIPLE_FAMILIES:
        for y, yp, ybar in product(range(1, 4), repeat=3):
            ineqs += triple_ineqs(family, y, yp, ybar)
    return variables, ineqs


def cor2m(m):
    """Box plus the 8 cyclic inequalities for every pair of Bob settings."""
    if m < 1:
        raise ValueError("m must be positive")
    variables = angle_vars(2, m)
    ineqs = bounds(variables)
    for i, j in combinations(range(1, m + 1), 2):
        c1i, c1j, c2i, c2j = cvar(1, i), cvar(1, j), cvar(2, i), cvar(2, j)
        for expr in (
            {c1j: 1, c2i: 1, c2j: 1, c1i: -1},
            {c1i: 1, c2i: 1, c2j: 1, c1j: -1},
            {c1i: 1, c1j: 1, c2j: 1, c2i: -1},
            {c1i: 1, c1j: 1, c2i: 1, c2j: -1},
        ):
            ineqs.append(LinIneq.make({k: -v for k, v in expr.items()}, 0))
            ineqs.append(LinIneq.make(expr, 2))
    return variables, ineqs


_BUILDERS = {
    "cor33_angles": cor33_angles,
    "lemma2": lemma2,
    "tlm_full": tlm_full,
}


def raw_named_ineqs(name, m=None):
    """Generated inequalities before deduplication (for counting)."""
    if name == "cor2m":
        return cor2m(2 if m is None else m)
    if name not in _BUILDERS:
        raise UnknownName(name)
    return _BUILDERS[name]()


def build_named_system(name, m=None) -> LinSystem:
    """Build ``cor33_angles``, ``lemma2``, ``tlm_full`` or ``cor2m`` (with ``m`` Bob settings)."""
    variables, ineqs = raw_named_ineqs(name, m)
    return LinSystem(variables, tuple(ineqs))
