"""Exact two-phase revised simplex with Bland's rule.

Everything runs on ``Fraction``. Bland's rule (smallest entering index,
smallest leaving index on ties) guarantees termination on degenerate
problems, which are the norm for the symmetric angle systems.
"""
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _dot_col(y, col):
    return sum((y[r] * v for r, v in col), _ZERO)


def _binv_col(binv, col, k):
    return [sum((binv[i][r] * v for r, v in col), _ZERO) for i in range(k)]


def _run(cols, cost, basis, binv, xb, k, allowed):
    """Bland-rule iterations minimizing ``cost`` from a feasible basis (in place).

    Only columns with index below ``allowed`` may enter the basis.
    """
    while True:
        y = [sum((cost[basis[i]] * binv[i][r] for i in range(k)), _ZERO) for r in range(k)]
        in_basis = set(basis)
        entering = None
        for j in range(allowed):
            if j not in in_basis and cost[j] - _dot_col(y, cols[j]) < 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        u = _binv_col(binv, cols[entering], k)
        leave = None
        best = None
        for i in range(k):
            if u[i] > 0:
                ratio = xb[i] / u[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(binv, xb, u, leave, k)
        basis[leave] = entering


def _pivot(binv, xb, u, leave, k):
    piv = u[leave]
    row = [v / piv for v in binv[leave]]
    xl = xb[leave] / piv
    for i in range(k):
        if i == leave or not u[i]:
            continue
        f = u[i]
        bi = binv[i]
        for r in range(k):
            if row[r]:
                bi[r] -= f * row[r]
        xb[i] -= f * xl
    binv[leave] = row
    xb[leave] = xl


def minimize_standard(cols, rhs, cost):
    """Minimize ``cost @ y`` subject to ``E y = rhs``, ``y >= 0``.

    ``cols[j]`` is the sparse column ``[(row, value), ...]`` of ``E``.
    Returns ``(status, value, y)``; ``y`` maps column index to its nonzero value.
    """
    k = len(rhs)
    m = len(cols)
    rhs = [Fraction(v) for v in rhs]
    flip = {r for r in range(k) if rhs[r] < 0}
    if flip:
        cols = [[(r, -v if r in flip else v) for r, v in c] for c in cols]
        rhs = [-v if r in flip else v for r, v in enumerate(rhs)]
    all_cols = list(cols) + [[(r, _ONE)] for r in range(k)]
    basis = list(range(m, m + k))
    binv = [[_ONE if i == j else _ZERO for j in range(k)] for i in range(k)]
    xb = list(rhs)
    _run(all_cols, [_ZERO] * m + [_ONE] * k, basis, binv, xb, k, m + k)
    if any(xb[i] for i in range(k) if basis[i] >= m):
        return INFEASIBLE, None, None
    # Pivot zero-level artificials out where possible. Those that remain
    # sit on redundant rows and can never change value.
    for i in range(k):
        if basis[i] < m:
            continue
        in_basis = set(basis)
        for j in range(m):
            if j not in in_basis:
                u = _binv_col(binv, all_cols[j], k)
                if u[i]:
                    _pivot(binv, xb, u, i, k)
                    basis[i] = j
                    break
    cost = [Fraction(c) for c in cost] + [_ZERO] * k
    if _run(all_cols, cost, basis, binv, xb, k, m) == UNBOUNDED:
        return UNBOUNDED, None, None
    value = sum((cost[basis[i]] * xb[i] for i in range(k)), _ZERO)
    return OPTIMAL, value, {basis[i]: xb[i] for i in range(k) if xb[i] and basis[i] < m}


def maximize(A, b, obj):
    """``max obj @ x`` over ``A x <= b`` with free ``x``, via the dual LP.

    A dual optimum equals the primal optimum and an unbounded dual means an
    infeasible primal. An infeasible dual leaves the primal either infeasible
    or unbounded; :func:`is_feasible` decides which. Returns ``(status, value)``.
    """
    cols = [[(j, Fraction(v)) for j, v in enumerate(row) if v] for row in A]
    status, value, _ = minimize_standard(cols, [Fraction(v) for v in obj], [Fraction(v) for v in b])
    if status == INFEASIBLE:
        return (UNBOUNDED if is_feasible(A, b) else INFEASIBLE), None
    if status == UNBOUNDED:
        return INFEASIBLE, None
    return OPTIMAL, value


def is_feasible(A, b):
    """Farkas test: ``A x <= b`` is infeasible iff some ``y >= 0`` has ``A^T y = 0``, ``b @ y < 0``."""
    if not A:
        return True
    nvar = len(A[0])
    cols = [[(j, Fraction(v)) for j, v in enumerate(row) if v] + [(nvar, _ONE)] for row in A]
    status, value, _ = minimize_standard(cols, [_ZERO] * nvar + [_ONE], [Fraction(v) for v in b])
    return not (status == OPTIMAL and value < 0)
