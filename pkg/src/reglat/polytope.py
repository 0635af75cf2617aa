"""Lattice polytopes: hulls, face lattices, flags, lattice points and normalization.

A :class:`LatticePolytope` keeps its vertices both in ambient coordinates and
in coordinates with respect to the HNF basis of its lattice ("lattice
coordinates"), where they are integers.  Facet inequalities ``a . x <= b``
are stored in lattice coordinates, so ``a`` is a primitive vector of the dual
lattice.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._dd import facet_inequalities
from .errors import DegenerateError, NotLatticePointError
from .intlat import (
    AffineLatticeMap,
    Lattice,
    content,
    denominator_lcm,
    rank,
    saturate,
    solve_in_span,
)


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int
    vertices: frozenset[int]


@dataclass(frozen=True)
class FaceLattice:
    """Proper nonempty faces by dimension, each face a frozenset of vertex indices.

    ``up[d][i]`` lists the indices of the ``(d+1)``-faces containing face
    ``faces[d][i]``; ``down`` is the reverse relation.
    """

    faces: tuple[tuple[frozenset[int], ...], ...]
    up: tuple[tuple[tuple[int, ...], ...], ...]
    down: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.faces)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    def index(self, face: frozenset[int]) -> int:
        d = self.face_dim(face)
        return self.faces[d].index(face)

    def face_dim(self, face: frozenset[int]) -> int:
        for d, fs in enumerate(self.faces):
            if face in fs:
                return d
        raise KeyError("not a face")


@dataclass(frozen=True)
class Flag:
    """A complete flag, as the index of its face in each dimension ``0..n-1``."""

    chain: tuple[int, ...]

    def faces(self, fl: FaceLattice) -> tuple[frozenset[int], ...]:
        return tuple(fl.faces[d][i] for d, i in enumerate(self.chain))


class LatticePolytope:
    """A full-dimensional lattice polytope.  Build instances with :func:`hull`."""

    def __init__(self, lattice: Lattice, coords, facets, *, dual: bool = False):
        self.lattice = lattice
        self.dual = dual
        self.coords: tuple[tuple[int, ...], ...] = tuple(coords)
        self.facets: tuple[Facet, ...] = tuple(facets)
        self._vertices = None
        self._face_lattice = None
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def n_vertices(self) -> int:
        return len(self.coords)

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        if self._vertices is None:
            self._vertices = tuple(self.lattice.point(c) for c in self.coords)
        return self._vertices

    @property
    def face_lattice(self) -> FaceLattice:
        if self._face_lattice is None:
            with self._lock:
                if self._face_lattice is None:
                    self._face_lattice = _compute_face_lattice(self)
        return self._face_lattice

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self.lattice == other.lattice
            and self.dual == other.dual
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.lattice, self.dual, self.coords))

    def __repr__(self):
        tag = ", dual" if self.dual else ""
        return f"<LatticePolytope dim={self.dim} vertices={self.n_vertices} facets={len(self.facets)}{tag}>"

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "dim": self.dim,
            "lattice_basis": [[_fmt(x) for x in r] for r in self.lattice.basis],
            "vertices": [[_fmt(x) for x in v] for v in self.vertices],
        }
        if self.dual:
            d["dual"] = True
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "LatticePolytope":
        n = int(data["dim"])
        basis = [[Fraction(x) for x in r] for r in data["lattice_basis"]]
        verts = [[Fraction(x) for x in v] for v in data["vertices"]]
        if len(basis) != n or any(len(v) != n for v in verts):
            raise ValueError("dimension mismatch in polytope data")
        return hull(verts, Lattice(basis), dual=bool(data.get("dual", False)))


def _fmt(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# construction


def _from_coords(lattice: Lattice, pts: Iterable[Sequence[int]], dual: bool) -> LatticePolytope:
    pts = sorted(set(tuple(int(x) for x in p) for p in pts))
    n = lattice.dim
    if not pts:
        raise DegenerateError("empty point set")
    base = pts[0]
    if rank([[a - b for a, b in zip(p, base)] for p in pts[1:]]) < n:
        raise DegenerateError("points do not span the ambient space affinely")
    raw = facet_inequalities(pts)
    is_vertex = []
    for i in range(len(pts)):
        normals = [a for a, _, tight in raw if i in tight]
        is_vertex.append(rank(normals) == n)
    keep = [i for i in range(len(pts)) if is_vertex[i]]
    new_index = {old: new for new, old in enumerate(keep)}
    facets = sorted(
        (Facet(a, b, frozenset(new_index[i] for i in tight if i in new_index)) for a, b, tight in raw),
        key=lambda f: f.normal,
    )
    return LatticePolytope(lattice, [pts[i] for i in keep], facets, dual=dual)


def hull(points: Sequence[Sequence], L: Lattice, *, dual: bool = False) -> LatticePolytope:
    """Convex hull of lattice points of ``L`` given in ambient coordinates."""
    coords = []
    for p in points:
        if len(p) != L.dim:
            raise ValueError("point dimension does not match the lattice")
        c = L.coords(p)
        if any(x.denominator != 1 for x in c):
            raise NotLatticePointError(f"{tuple(map(str, p))} is not a lattice point")
        coords.append(tuple(x.numerator for x in c))
    return _from_coords(L, coords, dual)


def transform(P: LatticePolytope, A: AffineLatticeMap | Sequence[Sequence]) -> LatticePolytope:
    """Image of ``P`` together with its lattice under an invertible linear or affine map.

    The result is isomorphic to ``P``: only the ambient coordinates change.
    A translation part must send lattice points to lattice points of the image
    lattice, which holds when it lies in the image lattice.
    """
    g = A if isinstance(A, AffineLatticeMap) else AffineLatticeMap.linear_map(A)
    L2 = P.lattice.transform(g.linear)
    return hull([g.apply(v) for v in P.vertices], L2, dual=P.dual)


def apply_map(P: LatticePolytope, g: AffineLatticeMap) -> LatticePolytope:
    """Image of ``P`` under ``g`` inside the same lattice (e.g. a translation or homothety)."""
    return hull([g.apply(v) for v in P.vertices], P.lattice, dual=P.dual)


# ---------------------------------------------------------------------------
# faces and flags


def _compute_face_lattice(P: LatticePolytope) -> FaceLattice:
    n = P.dim
    facet_sets = sorted({f.vertices for f in P.facets}, key=lambda s: sorted(s))
    levels: list[list[frozenset[int]]] = [[] for _ in range(n)]
    levels[n - 1] = facet_sets
    for d in range(n - 1, 0, -1):
        children = set()
        for G in levels[d]:
            cands = {G & F for F in facet_sets if not G <= F}
            cands.discard(frozenset())
            for c in cands:
                if not any(c < o for o in cands):
                    children.add(c)
        levels[d - 1] = sorted(children, key=lambda s: sorted(s))
    if n == 1:
        levels[0] = sorted(levels[0], key=lambda s: sorted(s))
    faces = tuple(tuple(lv) for lv in levels)
    up, down = [], [()]
    for d in range(n):
        if d < n - 1:
            up.append(
                tuple(
                    tuple(j for j, G in enumerate(faces[d + 1]) if F <= G) for F in faces[d]
                )
            )
        else:
            up.append(tuple(() for _ in faces[d]))
        if d > 0:
            down.append(
                tuple(tuple(j for j, G in enumerate(faces[d - 1]) if G <= F) for F in faces[d])
            )
    down[0] = tuple(() for _ in faces[0])
    return FaceLattice(faces, tuple(up), tuple(down))


def face_lattice(P: LatticePolytope) -> FaceLattice:
    return P.face_lattice


def iter_flags(P: LatticePolytope) -> Iterator[Flag]:
    fl = P.face_lattice
    n = P.dim

    def grow(chain):
        d = len(chain) - 1
        if d == n - 1:
            yield Flag(tuple(chain))
            return
        for j in fl.up[d][chain[-1]]:
            chain.append(j)
            yield from grow(chain)
            chain.pop()

    for v in range(len(fl.faces[0])):
        yield from grow([v])


def flags(P: LatticePolytope) -> list[Flag]:
    """All complete flags, in canonical (lexicographic index) order."""
    return list(iter_flags(P))


def flag_count(P: LatticePolytope) -> int:
    """Number of complete flags, counted along the face poset without listing them."""
    fl = P.face_lattice
    counts = [1] * len(fl.faces[0])
    for d in range(1, P.dim):
        counts = [sum(counts[j] for j in fl.down[d][i]) for i in range(len(fl.faces[d]))]
    return sum(counts)


# ---------------------------------------------------------------------------
# centering and primitivity


def _coord_barycenter(P: LatticePolytope) -> tuple[Fraction, ...]:
    m = P.n_vertices
    return tuple(Fraction(sum(c[i] for c in P.coords), m) for i in range(P.dim))


def barycenter(P: LatticePolytope) -> tuple[Fraction, ...]:
    """Mean of the vertices (ambient coordinates)."""
    return P.lattice.point(_coord_barycenter(P))


def is_centered(P: LatticePolytope) -> bool:
    return not any(_coord_barycenter(P))


def is_primitive(P: LatticePolytope) -> bool:
    return content(x for c in P.coords for x in c) == 1


def _as_int(x: Fraction) -> int:
    assert x.denominator == 1
    return x.numerator


def normalize(P: LatticePolytope) -> tuple[LatticePolytope, AffineLatticeMap]:
    """Centered primitive representative of ``P`` and the map carrying ``P`` onto it.

    Scale by the least ``m`` making ``m * barycenter`` a lattice point,
    translate the barycenter to the origin, then divide by the gcd ``d`` of all
    vertex coordinates.  The witness is ``v -> (m/d) (v - barycenter)``.
    """
    b = _coord_barycenter(P)
    m = denominator_lcm(b)
    Y = [tuple(int(m * (x - y)) for x, y in zip(c, b)) for c in P.coords]
    d = content(x for c in Y for x in c)
    r = Fraction(m, d)
    coords = [tuple(x // d for x in c) for c in Y]
    # positive scaling plus translation keeps the lexicographic vertex order
    shift = [sum(a * x for a, x in zip(f.normal, b)) for f in P.facets]
    facets = [
        Facet(f.normal, _as_int(r * (f.offset - s)), f.vertices) for f, s in zip(P.facets, shift)
    ]
    Q = LatticePolytope(P.lattice, coords, facets, dual=P.dual)
    n = P.dim
    b_amb = P.lattice.point(b)
    lin = tuple(tuple(r if i == j else Fraction(0) for j in range(n)) for i in range(n))
    w = AffineLatticeMap(lin, tuple(-r * x for x in b_amb), r)
    return Q, w


# ---------------------------------------------------------------------------
# lattice points


def lattice_point_count(P: LatticePolytope, chunk: int = 1 << 20) -> int:
    """``|P cap L|`` by a box scan in lattice coordinates.

    The first ``n-1`` coordinates range over the bounding box; for each of
    them the admissible interval of the last coordinate is read off the facet
    inequalities.
    """
    n = P.dim
    C = np.array(P.coords, dtype=np.int64)
    lo, hi = C.min(axis=0), C.max(axis=0)
    A = np.array([f.normal for f in P.facets], dtype=np.int64)
    b = np.array([f.offset for f in P.facets], dtype=np.int64)
    a_last = A[:, -1]
    pos, neg, flat = a_last > 0, a_last < 0, a_last == 0

    def count_block(X: np.ndarray) -> int:
        # X: (k, n-1) prefixes; residual r = b - A' x
        R = b[None, :] - X @ A[:, :-1].T
        ok = np.all(R[:, flat] >= 0, axis=1)
        upper = np.full(len(X), hi[-1], dtype=np.int64)
        lower = np.full(len(X), lo[-1], dtype=np.int64)
        if pos.any():
            upper = np.minimum(upper, np.min(R[:, pos] // a_last[pos], axis=1))
        if neg.any():
            lower = np.maximum(lower, np.max(-((-R[:, neg]) // a_last[neg]), axis=1))
        width = np.where(ok, np.maximum(upper - lower + 1, 0), 0)
        return int(width.sum())

    if n == 1:
        return count_block(np.zeros((1, 0), dtype=np.int64))
    ranges = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo[:-1], hi[:-1])]
    total_prefix = prod(len(r) for r in ranges)
    if total_prefix <= chunk or n == 2:
        grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, n - 1)
        return count_block(grid)
    total = 0
    rest = ranges[1:]
    sub = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, n - 2)
    for x0 in ranges[0]:
        X = np.concatenate([np.full((len(sub), 1), x0, dtype=np.int64), sub], axis=1)
        total += count_block(X)
    return total


def _edges(P: LatticePolytope):
    if P.dim == 1:
        return (frozenset(range(P.n_vertices)),)
    return P.face_lattice.faces[1]


def _edge_points(P: LatticePolytope, e: frozenset[int]) -> int:
    i, j = sorted(e)
    return gcd(*(a - b for a, b in zip(P.coords[i], P.coords[j]))) + 1


def edge_point_counts(P: LatticePolytope) -> Counter:
    """Multiset of the numbers of lattice points on the closed edges."""
    return Counter(_edge_points(P, e) for e in _edges(P))


def edge_point_count(P: LatticePolytope) -> int:
    """Lattice points on the first edge (all edges agree for regular polytopes)."""
    return _edge_points(P, _edges(P)[0])


def face_subpolytope(P: LatticePolytope, face: frozenset[int]) -> LatticePolytope:
    """The face as a full-dimensional polytope in its own lattice ``L cap direction``.

    Coordinates are taken in an HNF basis of that sublattice, with the face's
    lowest-index vertex moved to the origin.
    """
    idx = sorted(face)
    v0 = P.coords[idx[0]]
    diffs = [tuple(a - b for a, b in zip(P.coords[i], v0)) for i in idx[1:]]
    basis = saturate(diffs, P.dim)
    k = len(basis)
    if k == 0:
        raise DegenerateError("a vertex is not a polytope of positive dimension")
    pts = [(0,) * k]
    for dv in diffs:
        c = solve_in_span(dv, basis)
        pts.append(tuple(int(x) for x in c))
    return _from_coords(Lattice.standard(k), pts, False)


def facet_subpolytopes(P: LatticePolytope) -> list[LatticePolytope]:
    return [face_subpolytope(P, F) for F in P.face_lattice.faces[P.dim - 1]]


def simplex_points_closed_form(n: int, d: int) -> int:
    """Lattice points of the simplex class with parameters ``(n, d)``, closed form."""
    return comb(n + d, n) + (1 if d <= n else 0)


def facet_vertex_counts(P: LatticePolytope) -> Counter:
    return Counter(len(f.vertices) for f in P.facets)


def dual_barycenters(P: LatticePolytope) -> list[tuple[Fraction, ...]]:
    """Vertex barycenters of the facets, in lattice coordinates."""
    out = []
    for f in P.facets:
        m = len(f.vertices)
        out.append(tuple(Fraction(sum(P.coords[i][k] for i in f.vertices), m) for k in range(P.dim)))
    return out


def scale(P: LatticePolytope, k: int) -> LatticePolytope:
    """Integer homothety centred at the origin."""
    return apply_map(P, AffineLatticeMap.linear_map(
        [[k if i == j else 0 for j in range(P.dim)] for i in range(P.dim)], k))


def translate(P: LatticePolytope, t: Sequence) -> LatticePolytope:
    n = P.dim
    return apply_map(P, AffineLatticeMap([[int(i == j) for j in range(n)] for i in range(n)], t))


def lcm_face_sizes(fl: FaceLattice) -> int:
    out = 1
    for level in fl.faces:
        for F in level:
            out = lcm(out, len(F))
    return out
