"""Fourier-Motzkin projection, LP implication and redundancy removal."""
from __future__ import annotations

from fractions import Fraction

from ..errors import EmptyInterval, Infeasible, Unbounded, VariableNotFound
from . import simplex
from .linsys import LinIneq, LinSystem


def fm_eliminate(S: LinSystem, v: str) -> LinSystem:
    """Project ``S`` along ``v``: pair every lower bound with every upper bound."""
    if v not in S.variables:
        raise VariableNotFound(v)
    upper, lower, rest = [], [], []
    for q in S.ineqs:
        a = q.coeff(v)
        (upper if a > 0 else lower if a < 0 else rest).append((a, q))
    out = [q for _, q in rest]
    for a_up, up in upper:
        cu = up.coeff_map
        for a_lo, lo in lower:
            cl = lo.coeff_map
            coeffs = {}
            for name in set(cu) | set(cl):
                if name == v:
                    continue
                coeffs[name] = -a_lo * cu.get(name, 0) + a_up * cl.get(name, 0)
            out.append(LinIneq.make(coeffs, -a_lo * up.rhs + a_up * lo.rhs))
    return LinSystem(tuple(x for x in S.variables if x != v), tuple(out))


def is_feasible(S: LinSystem) -> bool:
    A, b = S.matrix()
    return simplex.is_feasible(A, b)


def maximize(S: LinSystem, objective) -> tuple[str, Fraction | None]:
    obj = dict(objective.coeffs) if isinstance(objective, LinIneq) else dict(objective)
    unknown = set(obj) - set(S.variables)
    if unknown:
        raise VariableNotFound(", ".join(sorted(unknown)))
    A, b = S.matrix()
    return simplex.maximize(A, b, [obj.get(v, 0) for v in S.variables])


def implies(S: LinSystem, q: LinIneq, check_feasible=True) -> bool:
    """True iff every solution of ``S`` satisfies ``q`` (exact LP)."""
    if check_feasible and not is_feasible(S):
        raise Infeasible("system has no solution")
    if not q.coeffs:
        return q.rhs >= 0
    status, value = maximize(S, q)
    if status == simplex.UNBOUNDED:
        raise Unbounded(f"objective of {q} is unbounded over the system")
    return value <= q.rhs


def implies_all(S: LinSystem, T: LinSystem) -> bool:
    if not is_feasible(S):
        raise Infeasible("system has no solution")
    for q in T.ineqs:
        try:
            if not implies(S, q, check_feasible=False):
                return False
        except Unbounded:
            return False
    return True


def equivalent(S: LinSystem, T: LinSystem) -> bool:
    return implies_all(S, T) and implies_all(T, S)


def remove_redundant(S: LinSystem) -> LinSystem:
    """Drop, in canonical order, every inequality implied by the ones still kept."""
    if not is_feasible(S):
        raise Infeasible("system has no solution")
    kept = list(S.ineqs)
    i = 0
    while i < len(kept):
        q = kept[i]
        others = LinSystem(S.variables, tuple(kept[:i] + kept[i + 1:]))
        try:
            redundant = implies(others, q, check_feasible=False)
        except Unbounded:
            redundant = False
        if redundant:
            kept.pop(i)
        else:
            i += 1
    return LinSystem(S.variables, tuple(kept))


def eliminate_all(S: LinSystem, variables, reduce=True) -> list[LinSystem]:
    """Eliminate ``variables`` in order; returns the chain ``[S, S1, ..., Sk]``."""
    chain = [S]
    for v in variables:
        nxt = fm_eliminate(chain[-1], v)
        if reduce:
            nxt = remove_redundant(nxt)
        chain.append(nxt)
    return chain


def _interval(S, v, values):
    lo = hi = None
    for q in S.ineqs:
        a = Fraction(0)
        slack = q.rhs
        for name, c in q.coeffs:
            if name == v:
                a = c
            else:
                slack -= c * values[name]
        if a > 0:
            bound = slack / a
            hi = bound if hi is None else min(hi, bound)
        elif a < 0:
            bound = slack / a
            lo = bound if lo is None else max(lo, bound)
        elif slack < 0:
            raise EmptyInterval(f"point violates {q}")
    return lo, hi


def lift_witness(S: LinSystem, eliminated, point, reduce=False, chain=None) -> dict:
    """Back-substitute values for ``eliminated`` so that ``point`` extends to a solution of ``S``.

    Each variable gets the midpoint of its feasible interval, computed in
    reverse elimination order. A half-infinite interval takes its finite
    end moved inward by one; a free variable takes 0. ``chain`` may pass a
    precomputed ``eliminate_all(S, eliminated)`` result (its final stage is
    not needed) when lifting many points.
    """
    values = {k: Fraction(v) for k, v in point.items()}
    if chain is None:
        chain = eliminate_all(S, eliminated[:-1], reduce=reduce) if eliminated else [S]
    lifted = {}
    stages = chain[:len(eliminated)]
    for stage, v in zip(reversed(stages), reversed(eliminated)):
        lo, hi = _interval(stage, v, values)
        if lo is not None and hi is not None:
            if lo > hi:
                raise EmptyInterval(f"no feasible value for {v}: [{lo}, {hi}]")
            x = (lo + hi) / 2
        elif lo is not None:
            x = lo + 1
        elif hi is not None:
            x = hi - 1
        else:
            x = Fraction(0)
        values[v] = lifted[v] = x
    violated = S.violations(values)
    if violated:
        raise EmptyInterval(f"lifted point violates {violated[0]}")
    return lifted
