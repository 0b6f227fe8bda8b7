"""Small dense symmetric-matrix primitives.

Matrices are plain numpy arrays. Only the upper triangle is read, so any
square array is interpreted as the symmetric matrix it induces.
"""
import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionTooLarge, NotPsd, NotUnitDiagonal, SingularBlock

EIG_TOL = 1e-12
PIVOT_TOL = 1e-12
SYLVESTER_MAX_DIM = 12


def as_sym(M):
    """Return the symmetric float array defined by the upper triangle of ``M``."""
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    upper = np.triu(a)
    return upper + np.triu(a, 1).T


def min_eigenvalue(M):
    return float(np.linalg.eigvalsh(as_sym(M))[0])


def is_psd(M, tol=0.0):
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return min_eigenvalue(M) >= -tol


def _fraction_rows(M):
    """Exact rational rows read from the upper triangle of ``M``."""
    if _is_exact(M):
        src = [[Fraction(v) for v in r] for r in M]
    else:
        src = [[Fraction(float(v)) for v in r] for r in as_sym(M)]
    n = len(src)
    return [[src[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


def _is_exact(M):
    if isinstance(M, np.ndarray):
        return M.dtype == object
    try:
        return any(isinstance(v, Fraction) for r in M for v in r)
    except TypeError:
        return False


def _integer_rows(rows):
    den = math.lcm(*(v.denominator for r in rows for v in r)) if rows else 1
    return [[int(v * den) for v in r] for r in rows], den


def _int_det(rows):
    """Bareiss fraction-free determinant of an integer matrix (list of lists)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def exact_det(M):
    """Exact determinant of a square matrix of rationals (floats converted exactly)."""
    rows = [[Fraction(v) for v in r] for r in M]
    ints, den = _integer_rows(rows)
    return Fraction(_int_det(ints), den ** len(rows))


def sylvester_psd(M):
    """Decide psd-ness exactly by checking every principal minor.

    Float entries are converted to their exact binary rationals, so the
    verdict carries no rounding error. Cost is ``2**dim`` determinants.
    """
    rows = _fraction_rows(M)
    n = len(rows)
    if n > SYLVESTER_MAX_DIM:
        raise DimensionTooLarge(f"Sylvester enumeration capped at dim {SYLVESTER_MAX_DIM}, got {n}")
    ints, _ = _integer_rows(rows)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            if _int_det([[ints[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def schur_complement(M, k):
    """``A - B D^{-1} B^T`` for the split ``M = [[A, B], [B^T, D]]`` with ``A`` of size k."""
    a = as_sym(M)
    n = a.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"block split must satisfy 1 <= k < {n}")
    A, B, D = a[:k, :k], a[:k, k:], a[k:, k:]
    if np.min(np.abs(np.linalg.eigvalsh(D))) < PIVOT_TOL:
        raise SingularBlock("trailing block is singular")
    S = A - B @ np.linalg.solve(D, B.T)
    return (S + S.T) / 2


def cholesky_gram_vectors(M, tol=1e-9):
    """Factor a unit-diagonal psd matrix as a Gram matrix of unit vectors.

    Returns an ``(n, n)`` array whose rows ``w_i`` satisfy
    ``<w_i, w_j> = M[i, j]``. Uses diagonal pivoting; once the largest
    remaining pivot falls below ``PIVOT_TOL`` the remainder is clamped to
    zero, provided it is psd within ``tol``.
    """
    a = as_sym(M)
    n = a.shape[0]
    if np.max(np.abs(np.diag(a) - 1.0)) > 1e-9:
        raise NotUnitDiagonal("Gram factorization expects a unit diagonal")
    S = a.copy()
    L = np.zeros((n, n))
    remaining = list(range(n))
    for k in range(n):
        diag = S[remaining, remaining]
        if np.min(diag) < -tol:
            raise NotPsd(f"negative pivot {np.min(diag):.3e}")
        p = remaining[int(np.argmax(diag))]
        d = S[p, p]
        if d <= PIVOT_TOL:
            rest = S[np.ix_(remaining, remaining)]
            if np.linalg.eigvalsh(rest)[0] < -tol:
                raise NotPsd("residual block is not psd within tolerance")
            break
        col = np.zeros(n)
        col[remaining] = S[remaining, p] / np.sqrt(d)
        L[:, k] = col
        S -= np.outer(col, col)
        remaining.remove(p)
    norms = np.linalg.norm(L, axis=1)
    return L / norms[:, None]
