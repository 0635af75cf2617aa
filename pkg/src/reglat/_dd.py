"""Exact double-description facet enumeration for integer point sets."""

from __future__ import annotations

from math import gcd

from .intlat import dot, mat_inv, primitive_int, rank, transpose


def _independent_rows(rows):
    chosen, picked = [], []
    for i, r in enumerate(rows):
        if rank(chosen + [r]) > len(chosen):
            chosen.append(r)
            picked.append(i)
            if len(chosen) == len(rows[0]):
                break
    return picked


def facet_inequalities(points):
    """Facets of the hull of affinely spanning integer ``points``.

    Returns a list of ``(a, b, tight)`` where ``a`` is a primitive integer row,
    ``a . x <= b`` holds on every point, and ``tight`` is the set of point
    indices where it is an equality.
    """
    A = [(1,) + tuple(p) for p in points]
    d = len(A[0])
    basis = _independent_rows(A)
    if len(basis) < d:
        raise ValueError("points are not affinely spanning")
    cols = transpose(mat_inv([A[i] for i in basis]))
    rays = [primitive_int(c) for c in cols]
    all_basis = 0
    for i in basis:
        all_basis |= 1 << i
    zeros = [all_basis & ~(1 << basis[j]) for j in range(len(rays))]

    in_basis = set(basis)
    for i in range(len(A)):
        if i in in_basis:
            continue
        row = A[i]
        vals = [dot(row, r) for r in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        if not minus:
            bit = 1 << i
            zeros = [z | bit if vals[k] == 0 else z for k, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for p in plus:
            zp = zeros[p]
            for q in minus:
                common = zp & zeros[q]
                if common.bit_count() < d - 2:
                    continue
                if any(
                    k != p and k != q and (zeros[k] & common) == common
                    for k in range(len(rays))
                ):
                    continue
                r = tuple(vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p]))
                new_rays.append(primitive_int(r))
                new_zeros.append(common | (1 << i))
        bit = 1 << i
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | bit if vals[k] == 0 else zeros[k] for k in keep] + new_zeros

    out = []
    for h in rays:
        a = tuple(-x for x in h[1:])
        b = h[0]
        g = 0
        for x in a:
            g = gcd(g, x)
        a = tuple(x // g for x in a)
        b //= g
        tight = frozenset(i for i, p in enumerate(points) if dot(a, p) == b)
        out.append((a, b, tight))
    return out

