"""Double description conversions between H- and V-representations.

The core works on integer vectors: a polyhedral cone ``{r : h.r >= 0}`` is
built by inserting constraints one at a time and pairing adjacent rays on
opposite sides of each new hyperplane. Adjacency uses the combinatorial
test (no other ray is tight on every constraint the pair shares), which is
exact because every stored ray is extreme.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..errors import EmptyPolytope, Unbounded
from .reps import HPolytope, VPolytope, primitive


class LinealityError(Exception):
    """The cone contains a line: the constraint rows do not have full rank."""


def _int_vec(values):
    return tuple(int(x) for x in primitive(values))


def _rank_basis(rows, dim):
    """Indices of a greedy maximal linearly independent subset of ``rows``."""
    basis_rows = []
    pivots = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for piv_col, brow in zip(pivots, basis_rows):
            if r[piv_col]:
                f = r[piv_col] / brow[piv_col]
                r = [a - f * b for a, b in zip(r, brow)]
        col = next((c for c in range(dim) if r[c]), None)
        if col is None:
            continue
        basis_rows.append(r)
        pivots.append(col)
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _inverse_columns(rows):
    """Columns of the inverse of a square rational matrix."""
    k = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(rows)]
    for c in range(k):
        p = next(r for r in range(c, k) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    inv = [row[k:] for row in aug]
    return [[inv[i][j] for i in range(k)] for j in range(k)]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(rows, dim):
    """Extreme rays of the pointed cone ``{r in R^dim : h.r >= 0 for h in rows}``.

    ``rows`` are integer tuples, processed in the given order after an
    initial simplicial cone made of the first independent ones.
    """
    rows = [tuple(int(x) for x in h) for h in rows]
    start = _rank_basis(rows, dim)
    if len(start) < dim:
        raise LinealityError("constraint rows do not span; the cone contains a line")
    order = start + [i for i in range(len(rows)) if i not in set(start)]
    rays = [_int_vec(col) for col in _inverse_columns([rows[i] for i in start])]
    zeros = []
    for j in range(dim):
        zeros.append(sum(1 << pos for pos in range(dim) if pos != j))
    need = dim - 2
    for pos in range(dim, len(order)):
        h = rows[order[pos]]
        bit = 1 << pos
        vals = [_dot(h, r) for r in rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [z | bit if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        posi = [i for i, v in enumerate(vals) if v > 0]
        new_rays, new_zeros = [], []
        for p in posi:
            zp = zeros[p]
            for n in neg:
                common = zp & zeros[n]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for i, z in enumerate(zeros):
                    if i != p and i != n and z & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                combo = [vp * b - vn * a for a, b in zip(rays[p], rays[n])]
                g = math.gcd(*combo)
                new_rays.append(tuple(x // g for x in combo))
                new_zeros.append(common | bit)
        keep = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in keep] + new_rays
        zeros = [zeros[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_zeros
    return rays


def _homogenize(P: HPolytope):
    """Rows ``(b, -a)`` meaning ``b t - a.x >= 0``, plus ``t >= 0``, integer-scaled."""
    rows = [tuple([1] + [0] * P.dim)]
    for a, b in P.all_inequalities():
        rows.append(_int_vec([b] + [-x for x in a]))
    return rows


def h_to_v(P: HPolytope) -> VPolytope:
    """Vertices of a bounded H-polytope by double description."""
    from ..fme import is_feasible

    try:
        rays = extreme_rays(_homogenize(P), P.dim + 1)
    except LinealityError:
        if not is_feasible(P.to_system()):
            raise EmptyPolytope("no point satisfies the inequalities") from None
        raise Unbounded("the polyhedron contains a line") from None
    finite = [r for r in rays if r[0] > 0]
    if not finite:
        raise EmptyPolytope("no point satisfies the inequalities")
    if len(finite) < len(rays):
        raise Unbounded("the polyhedron has a recession direction")
    verts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in finite]
    return VPolytope(P.dim, tuple(verts))


def _rref(matrix):
    """Reduced row echelon form over the rationals; returns (rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def affine_hull(vertices, dim):
    """``(equations, coordinate_indices)`` of the affine hull of ``vertices``.

    Each equation ``(e, f)`` means ``e.x == f``. The coordinate indices pick
    a subset of coordinates that parametrize the hull one-to-one.
    """
    rows, pivots = _rref([[1] + list(v) for v in vertices])
    free = [c for c in range(dim + 1) if c not in pivots]
    equations = []
    for fc in free:
        null = [Fraction(0)] * (dim + 1)
        null[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            null[pc] = -row[fc]
        equations.append((tuple(null[1:]), -null[0]))
    coords = [c - 1 for c in pivots if c > 0]
    return equations, coords


def v_to_h(V: VPolytope) -> HPolytope:
    """Facets of ``conv(V)``; hull equations are returned separately when it is not full-dimensional."""
    if not V.vertices:
        raise EmptyPolytope("no vertices")
    equations, coords = affine_hull(V.vertices, V.dim)
    k = len(coords)
    if k == 0:
        return HPolytope(V.dim, (), tuple(equations))
    # cone of valid inequalities (b, a) with b - a.p >= 0 on every projected point
    rows = [_int_vec([1] + [-v[c] for c in coords]) for v in V.vertices]
    rays = extreme_rays(rows, k + 1)
    ineqs = []
    for r in rays:
        if not any(r[1:]):
            continue
        a = [Fraction(0)] * V.dim
        for c, val in zip(coords, r[1:]):
            a[c] = Fraction(val)
        ineqs.append((tuple(a), Fraction(r[0])))
    return HPolytope(V.dim, tuple(ineqs), tuple(equations))


def to_vpolytope(P) -> VPolytope:
    return P if isinstance(P, VPolytope) else h_to_v(P)


def polytopes_equal(P1, P2) -> bool:
    """Compare two polytopes (either representation) by their canonical vertex lists."""
    if P1.dim != P2.dim:
        raise ValueError(f"dimension mismatch: {P1.dim} vs {P2.dim}")
    return to_vpolytope(P1).vertices == to_vpolytope(P2).vertices
