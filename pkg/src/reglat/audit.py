"""Exhaustive search for regular lattice polygons in a small box."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .catalog import classify, table
from .errors import BudgetExceededError
from .intlat import Lattice
from .polytope import hull
from .symmetry import is_regular

MAX_BOUND = 4


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _lattice_length(d) -> int:
    return gcd(d[0], d[1])


def _primitive(d):
    g = _lattice_length(d)
    return (d[0] // g, d[1] // g)


def _strictly_convex(poly) -> bool:
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        e = (b[0] - a[0], b[1] - a[1])
        for j in range(k):
            if j in (i, (i + 1) % k):
                continue
            if _cross(e, (poly[j][0] - a[0], poly[j][1] - a[1])) <= 0:
                return False
    return True


def convex_polygons(bound: int, *, equal_edges: bool = True):
    """Strictly convex lattice polygons in ``[-bound, bound]^2``, each listed once.

    The lexicographically least vertex comes first and the others follow
    counter-clockwise.  With ``equal_edges`` only polygons whose edges share
    one lattice length and whose corners share one lattice angle are
    produced; both are necessary for regularity since symmetries preserve them.
    """
    pts = [(x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)]

    for v0 in pts:
        later = [p for p in pts if p > v0]

        def grow(path, dirs, length, corner):
            last = path[-1]
            if len(path) >= 3:
                close = (v0[0] - last[0], v0[1] - last[1])
                ok = _cross(dirs[-1], close) > 0 and _cross(close, dirs[0]) > 0
                if ok and equal_edges:
                    ok = (
                        _lattice_length(close) == length
                        and _corner(dirs[-1], close) == corner
                        and _corner(close, dirs[0]) == corner
                    )
                if ok and _strictly_convex(path):
                    yield list(path)
            for q in later:
                if q in path:
                    continue
                d = (q[0] - last[0], q[1] - last[1])
                if dirs and _cross(dirs[-1], d) <= 0:
                    continue
                if dirs and _cross(dirs[0], (q[0] - v0[0], q[1] - v0[1])) <= 0:
                    continue
                if len(path) >= 2 and _cross(d, (v0[0] - q[0], v0[1] - q[1])) <= 0:
                    continue
                new_len, new_corner = length, corner
                if equal_edges:
                    if length is None:
                        new_len = _lattice_length(d)
                    elif _lattice_length(d) != length:
                        continue
                    if dirs:
                        c = _corner(dirs[-1], d)
                        if corner is None:
                            new_corner = c
                        elif c != corner:
                            continue
                path.append(q)
                dirs.append(d)
                yield from grow(path, dirs, new_len, new_corner)
                path.pop()
                dirs.pop()

        yield from grow([v0], [], None, None)


def _corner(u, v) -> int:
    return abs(_cross(_primitive(u), _primitive(v)))


@dataclass
class AuditReport:
    bound: int
    candidates: int = 0
    regular: int = 0
    per_class: Counter = field(default_factory=Counter)
    unexpected: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unexpected and self.regular > 0

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "candidates": self.candidates,
            "regular": self.regular,
            "per_class": dict(sorted(self.per_class.items())),
            "unexpected": self.unexpected,
            "pass": self.ok,
        }


def audit2d(bound: int) -> AuditReport:
    """Test every candidate polygon for regularity and classify the regular ones."""
    if bound > MAX_BOUND or bound < 1:
        raise BudgetExceededError(f"bound must lie in 1..{MAX_BOUND}")
    allowed = {e.name for e in table(2)}
    L = Lattice.standard(2)
    rep = AuditReport(bound)
    for poly in convex_polygons(bound):
        rep.candidates += 1
        P = hull(poly, L)
        if not is_regular(P):
            continue
        rep.regular += 1
        r = classify(P)
        if r and r.name in allowed:
            rep.per_class[r.name] += 1
        else:
            rep.unexpected.append({"vertices": [list(p) for p in poly], "result": r.status})
    return rep
