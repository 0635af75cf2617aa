"""Independent reference computations used by the tests."""

import itertools
from fractions import Fraction

from reglat.intlat import mat_inv, rank


def in_hull_caratheodory(p, verts):
    """Exact membership test: ``p`` lies in a simplex spanned by ``n+1`` of the vertices."""
    n = len(p)
    p = tuple(Fraction(x) for x in p)
    for S in itertools.combinations(verts, n + 1):
        base = S[0]
        M = [[Fraction(a) - Fraction(b) for a, b in zip(v, base)] for v in S[1:]]
        if rank(M) < n:
            continue
        inv = mat_inv(M)
        rhs = [a - Fraction(b) for a, b in zip(p, base)]
        lam = [sum(rhs[k] * inv[k][j] for k in range(n)) for j in range(n)]
        if all(x >= 0 for x in lam) and sum(lam) <= 1:
            return True
    return False


def brute_count(P):
    """Lattice points of ``P`` by Caratheodory tests over its coordinate box."""
    C = P.coords
    n = P.dim
    lo = [min(c[i] for c in C) for i in range(n)]
    hi = [max(c[i] for c in C) for i in range(n)]
    return sum(
        in_hull_caratheodory(x, C)
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
    )


def _int_adjugate(M):
    """Integer adjugate and determinant of an integer square matrix (exact)."""
    n = len(M)
    inv = mat_inv(M)
    D = Fraction(1)
    # determinant from the inverse is awkward; use Bareiss-free Fraction elimination
    A = [[Fraction(x) for x in r] for r in M]
    for i in range(n):
        p = next(k for k in range(i, n) if A[k][i] != 0)
        if p != i:
            A[i], A[p] = A[p], A[i]
            D = -D
        D *= A[i][i]
        for k in range(i + 1, n):
            f = A[k][i] / A[i][i]
            A[k] = [a - f * b for a, b in zip(A[k], A[i])]
    adj = [[int(x * D) for x in row] for row in inv]
    return adj, int(D)


def simplex_box_count(vertices, lattice_basis):
    """Points of a lattice inside a simplex, by scanning the integer box around it.

    A box point ``x`` is counted when its barycentric coordinates are all
    non-negative and ``x . B^-1`` is integral.  Everything is exact integer
    arithmetic through adjugates.
    """
    import numpy as np

    V = [list(map(int, v)) for v in vertices]
    n = len(V[0])
    v0 = V[0]
    E = [[a - b for a, b in zip(v, v0)] for v in V[1:]]
    adjE, dE = _int_adjugate(E)
    adjB, dB = _int_adjugate([list(map(int, r)) for r in lattice_basis])
    lo = [min(v[i] for v in V) for i in range(n)]
    hi = [max(v[i] for v in V) for i in range(n)]
    grids = np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij")
    X = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    lam = (X - np.array(v0)) @ np.array(adjE, dtype=np.int64)
    if dE < 0:
        lam, dE = -lam, -dE
    inside = np.all(lam >= 0, axis=1) & (lam.sum(axis=1) <= dE)
    c = X @ np.array(adjB, dtype=np.int64)
    member = np.all(c % dB == 0, axis=1)
    return int(np.count_nonzero(inside & member))
