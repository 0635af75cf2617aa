"""Exact integer and rational linear algebra, and full-rank lattices.

Conventions used throughout the package: vectors are rows, a lattice is the
row span of its basis matrix, and a linear map ``A`` acts on the right,
``v -> v @ A``.  Every number is a Python ``int`` or ``Fraction``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NotStableError, NotSublatticeError, RankError, ZeroVectorError

Vec = tuple  # tuple of int | Fraction
Mat = tuple  # tuple of Vec


# ---------------------------------------------------------------------------
# small helpers


def frac_vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def frac_mat(M: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(frac_vec(r) for r in M)


def int_vec(v: Iterable) -> tuple[int, ...]:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(x.numerator)
    return tuple(out)


def int_mat(M: Iterable[Iterable]) -> tuple[tuple[int, ...], ...]:
    return tuple(int_vec(r) for r in M)


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M)) if M else ()


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def vec_mat(v: Sequence, A: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    n = len(A[0]) if A else 0
    return tuple(sum(v[i] * A[i][j] for i in range(len(v))) for j in range(n))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def denominator_lcm(values: Iterable) -> int:
    return reduce(lcm, (Fraction(x).denominator for x in values), 1)


def content(values: Iterable[int]) -> int:
    """gcd of a collection of integers (0 for an all-zero collection)."""
    return reduce(gcd, (abs(int(x)) for x in values), 0)


def primitive_int(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    m = denominator_lcm(v)
    w = [int(Fraction(x) * m) for x in v]
    g = content(w)
    if g == 0:
        raise ZeroVectorError("zero vector has no primitive rescaling")
    return tuple(x // g for x in w)


def det(A: Sequence[Sequence]) -> Fraction:
    M = [list(map(Fraction, r)) for r in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        piv = M[c][c]
        d *= piv
        for r in range(c + 1, n):
            f = M[r][c] / piv
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


def rank(A: Sequence[Sequence]) -> int:
    M = [list(map(Fraction, r)) for r in A]
    if not M:
        return 0
    rk, ncols = 0, len(M[0])
    for c in range(ncols):
        p = next((r for r in range(rk, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        for r in range(rk + 1, len(M)):
            f = M[r][c] / M[rk][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[rk])]
        rk += 1
        if rk == len(M):
            break
    return rk


def mat_inv(A: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(A)
    M = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise RankError("singular matrix")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def solve_in_span(v: Sequence, rows: Sequence[Sequence]) -> tuple[Fraction, ...] | None:
    """Coefficients ``x`` with ``x @ rows == v``, or None when ``v`` is outside the span.

    ``rows`` must be linearly independent.
    """
    k = len(rows)
    n = len(v)
    # Solve rows^T x = v by elimination on the augmented n x (k+1) system.
    M = [[Fraction(rows[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            raise RankError("rows are linearly dependent")
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(M[i][k] for i in range(k))


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def _echelon(M: Sequence[Sequence[int]]):
    """Row-style Hermite reduction of an arbitrary integer matrix.

    Returns ``(H, U, rank)`` with ``H = U @ M``, ``U`` unimodular, the first
    ``rank`` rows of ``H`` in Hermite normal form and the remaining rows zero.
    """
    H = [[int(x) for x in r] for r in M]
    m = len(H)
    ncols = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            piv = H[r][c]
            for i in range(r):
                q = H[i][c] // piv
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U)), r


def hnf(M: Sequence[Sequence[int]]):
    """Row Hermite normal form ``(H, U)`` with ``H = U @ M`` and ``U`` unimodular.

    ``H`` is upper triangular (echelon) with positive pivots, and every entry
    above a pivot lies in ``[0, pivot)``.
    """
    H, U, rk = _echelon(M)
    if rk != len(M):
        raise RankError(f"matrix has rank {rk} < {len(M)} rows")
    return H, U


def snf(M: Sequence[Sequence[int]]):
    """Smith normal form ``(S, U, V)`` of a nonsingular square integer matrix.

    ``S = U @ M @ V`` is diagonal with positive entries ``d1 | d2 | ...``.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise RankError("snf expects a square matrix")
    if det(M) == 0:
        raise RankError("singular matrix")
    S = [[int(x) for x in r] for r in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        S[a], S[b] = S[b], S[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for R in (S, V):
            for row in R:
                row[a], row[b] = row[b], row[a]

    for k in range(n):
        while True:
            # smallest nonzero entry of the trailing block goes to (k, k)
            i, j = min(
                ((i, j) for i in range(k, n) for j in range(k, n) if S[i][j]),
                key=lambda ij: abs(S[ij[0]][ij[1]]),
            )
            swap_rows(k, i)
            swap_cols(k, j)
            p = S[k][k]
            clean = True
            for i in range(k + 1, n):
                q = S[i][k] // p
                if q:
                    S[i] = [a - q * b for a, b in zip(S[i], S[k])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[k])]
                if S[i][k]:
                    clean = False
            for j in range(k + 1, n):
                q = S[k][j] // p
                if q:
                    for R in (S, V):
                        for row in R:
                            row[j] -= q * row[k]
                if S[k][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            S[k] = [a + b for a, b in zip(S[k], S[bad])]
            U[k] = [a + b for a, b in zip(U[k], U[bad])]
        if S[k][k] < 0:
            S[k] = [-a for a in S[k]]
            U[k] = [-a for a in U[k]]
    return tuple(map(tuple, S)), tuple(map(tuple, U)), tuple(map(tuple, V))


def left_kernel(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """A basis of the saturated lattice ``{x in Z^m : x @ M = 0}``."""
    H, U, rk = _echelon(M)
    return tuple(U[i] for i in range(rk, len(M)))


def saturate(rows: Sequence[Sequence], n: int | None = None) -> tuple[tuple[int, ...], ...]:
    """An integer basis of ``Z^n`` intersected with the rational span of ``rows``."""
    rows = [primitive_int(r) for r in rows if any(r)]
    if n is None:
        n = len(rows[0])
    if not rows:
        return ()
    perp = left_kernel(transpose(rows))  # vectors orthogonal to every row
    if not perp:
        return identity(n)
    basis = left_kernel(transpose(perp))
    H, _, rk = _echelon(basis)
    return H[:rk]


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    """A full-rank lattice in Q^n, stored as ``(1/den) * rowspan(hnf)``.

    ``den`` is the least positive integer with ``den * L`` integral, so two
    Lattice values are equal exactly when ``(den, hnf)`` agree.
    """

    __slots__ = ("_den", "_hnf", "_basis", "_inv")

    def __init__(self, basis: Sequence[Sequence]):
        rows = frac_mat(basis)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise RankError("a lattice basis must be a nonempty square matrix")
        den = denominator_lcm(x for r in rows for x in r)
        H, _ = hnf([[int(x * den) for x in r] for r in rows])
        self._den = den
        self._hnf = H
        self._basis = tuple(tuple(Fraction(x, den) for x in r) for r in H)
        self._inv = None

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence], n: int | None = None) -> "Lattice":
        gens = frac_mat(gens)
        den = denominator_lcm(x for r in gens for x in r)
        H, _, rk = _echelon([[int(x * den) for x in r] for r in gens])
        dim = n if n is not None else len(gens[0])
        if rk != dim:
            raise RankError(f"generators span rank {rk}, need {dim}")
        return cls([[Fraction(x, den) for x in r] for r in H[:rk]])

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(identity(n))

    @property
    def dim(self) -> int:
        return len(self._hnf)

    ambient_dim = dim

    @property
    def den(self) -> int:
        return self._den

    @property
    def hnf(self) -> tuple[tuple[int, ...], ...]:
        return self._hnf

    @property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._basis

    @property
    def inverse_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        if self._inv is None:
            self._inv = mat_inv(self._basis)
        return self._inv

    @property
    def covolume(self) -> Fraction:
        return abs(det(self._basis))

    @property
    def is_integral(self) -> bool:
        return self._den == 1

    def coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` with respect to the (HNF) basis."""
        return vec_mat(frac_vec(v), self.inverse_basis)

    def point(self, c: Sequence) -> tuple[Fraction, ...]:
        return vec_mat(frac_vec(c), self._basis)

    def contains(self, v: Sequence) -> bool:
        return all(x.denominator == 1 for x in self.coords(v))

    __contains__ = contains

    def dual(self) -> "Lattice":
        """``Hom(L, Z)`` in the dual coordinates given by the standard pairing."""
        return Lattice(transpose(self.inverse_basis))

    def transform(self, A: Sequence[Sequence]) -> "Lattice":
        """Image of the lattice under ``v -> v @ A`` (``A`` invertible)."""
        return Lattice(mat_mul(self._basis, frac_mat(A)))

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._den == other._den and self._hnf == other._hnf

    def __hash__(self):
        return hash((self._den, self._hnf))

    def __repr__(self):
        if self._den == 1:
            return f"Lattice({[list(r) for r in self._hnf]})"
        return f"Lattice(1/{self._den} * {[list(r) for r in self._hnf]})"


def is_member(L: Lattice, v: Sequence) -> bool:
    if len(v) != L.dim:
        raise ValueError("dimension mismatch")
    return L.contains(v)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """``|sup / sub|`` for ``sub`` contained in ``sup``."""
    if sub.dim != sup.dim or not all(sup.contains(r) for r in sub.basis):
        raise NotSublatticeError("first lattice is not contained in the second")
    q = sub.covolume / sup.covolume
    assert q.denominator == 1
    return q.numerator


def primitive_on_ray(L: Lattice, v: Sequence) -> tuple[Fraction, ...]:
    """The generator of ``R_{>0} v`` intersected with ``L``."""
    if not any(Fraction(x) for x in v):
        raise ZeroVectorError("zero vector spans no ray")
    return L.point(primitive_int(L.coords(v)))


# ---------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class AffineLatticeMap:
    """``v -> v @ linear + translation``.

    ``homothety_ratio`` records the scalar factor folded into ``linear`` when
    the map is a homothety composed with a lattice map; it is 1 for maps in
    the affine group of the lattice.
    """

    linear: tuple
    translation: tuple
    homothety_ratio: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "linear", frac_mat(self.linear))
        object.__setattr__(self, "translation", frac_vec(self.translation))
        object.__setattr__(self, "homothety_ratio", Fraction(self.homothety_ratio))

    @classmethod
    def identity(cls, n: int) -> "AffineLatticeMap":
        return cls(identity(n), (0,) * n)

    @classmethod
    def linear_map(cls, A: Sequence[Sequence], ratio=1) -> "AffineLatticeMap":
        return cls(A, (0,) * len(A), ratio)

    @property
    def dim(self) -> int:
        return len(self.translation)

    @property
    def is_identity(self) -> bool:
        return self.linear == frac_mat(identity(self.dim)) and not any(self.translation)

    @property
    def is_linear(self) -> bool:
        return not any(self.translation)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        w = vec_mat(frac_vec(v), self.linear)
        return tuple(a + b for a, b in zip(w, self.translation))

    __call__ = apply

    def then(self, other: "AffineLatticeMap") -> "AffineLatticeMap":
        """The composite map: first ``self``, then ``other``."""
        return AffineLatticeMap(
            mat_mul(self.linear, other.linear),
            other.apply(self.translation),
            self.homothety_ratio * other.homothety_ratio,
        )

    def inverse(self) -> "AffineLatticeMap":
        inv = mat_inv(self.linear)
        t = vec_mat(self.translation, inv)
        return AffineLatticeMap(inv, tuple(-x for x in t), 1 / self.homothety_ratio)

    def in_coordinates(self, L: Lattice) -> "AffineLatticeMap":
        """The same map written in the basis coordinates of ``L``."""
        B, Binv = L.basis, L.inverse_basis
        return AffineLatticeMap(
            mat_mul(mat_mul(B, self.linear), Binv),
            vec_mat(self.translation, Binv),
            self.homothety_ratio,
        )

    def preserves(self, L: Lattice) -> bool:
        """True when the map sends ``L`` onto ``L`` (and fixes its affine structure)."""
        if self.homothety_ratio != 1:
            return False
        m = self.in_coordinates(L)
        if any(x.denominator != 1 for r in m.linear for x in r):
            return False
        if any(x.denominator != 1 for x in m.translation):
            return False
        return abs(det(m.linear)) == 1


def _linear_part(g) -> tuple:
    if isinstance(g, AffineLatticeMap):
        return g.linear
    return frac_mat(g)


# ---------------------------------------------------------------------------
# invariant intermediate lattices


def stable_intermediate_lattices(sub: Lattice, sup: Lattice, G: Iterable) -> list[Lattice]:
    """All lattices ``sub <= L <= sup`` with ``g(L) = L`` for every ``g`` in ``G``.

    ``G`` holds linear maps (``AffineLatticeMap`` or matrices) in ambient
    coordinates; only the generators are needed.  Subgroups of the finite
    quotient ``sup/sub`` are built as joins of subgroups generated by single
    G-orbits.  Results are sorted by index over ``sub``.
    """
    lattice_index(sub, sup)  # raises NotSublatticeError
    gens = [_linear_part(g) for g in G]
    for A in gens:
        for L in (sub, sup):
            if L.transform(A) != L:
                raise NotStableError("a map does not stabilise both endpoint lattices")

    n = sup.dim
    S = int_mat(mat_mul(sub.basis, sup.inverse_basis))  # sub in sup-coordinates
    D, _U, V = snf(S)
    d = [D[i][i] for i in range(n)]
    Vinv = mat_inv(V)
    # quotient element y (y_i mod d_i) corresponds to sup-coordinates y @ V^-1
    actions = []
    for A in gens:
        A_sup = int_mat(mat_mul(mat_mul(sup.basis, A), sup.inverse_basis))
        actions.append(int_mat(mat_mul(mat_mul(Vinv, A_sup), V)))

    def red(y):
        return tuple(a % m for a, m in zip(y, d))

    elements = list(itertools.product(*(range(m) for m in d)))
    zero = tuple(0 for _ in d)

    def closure(seeds) -> frozenset:
        group = {zero}
        frontier = [zero]
        seeds = list(seeds)
        while frontier:
            new = []
            for x in frontier:
                for s in seeds:
                    y = red(tuple(a + b for a, b in zip(x, s)))
                    if y not in group:
                        group.add(y)
                        new.append(y)
            frontier = new
        return frozenset(group)

    seen: set = set()
    orbit_groups = set()
    for x in elements:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for A in actions:
                    z = red(vec_mat(y, A))
                    if z not in orbit:
                        orbit.add(z)
                        new.append(z)
            frontier = new
        seen |= orbit
        orbit_groups.add(closure(orbit))

    subgroups = set(orbit_groups)
    frontier = set(orbit_groups)
    while frontier:
        new = set()
        for a in frontier:
            for b in orbit_groups:
                c = closure(a | b)
                if c not in subgroups:
                    new.add(c)
        subgroups |= new
        frontier = new

    out = set()
    for H in subgroups:
        gens_sup = [vec_mat(y, Vinv) for y in H if y != zero]
        rows = list(sub.basis) + [sup.point(c) for c in gens_sup]
        out.add(Lattice.from_generators(rows, n))
    return sorted(out, key=lambda L: (lattice_index(sub, L), L.den, L.hnf))
