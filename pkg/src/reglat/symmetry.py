"""Lattice symmetries of polytopes and the flag-transitivity test for regularity.

A symmetry of a centered polytope fixes the origin, so it is the linear map
sending the *frame* of one complete flag (the barycenters of its vertex,
edge, ..., facet) to the frame of another.  Frames are always bases: the
barycenter of a face lies in its relative interior, hence outside the affine
hull of the smaller faces of the chain.  The candidate is accepted when it
is integral in lattice coordinates and permutes the vertices; a finite-order
integral map is automatically unimodular.

Work is done in lattice coordinates with numpy.  Frames are scaled by the
lcm of the face sizes so that they are integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

import numpy as np

from .errors import FrameError
from .intlat import AffineLatticeMap, det, frac_mat, mat_inv, mat_mul, vec_mat
from .polytope import Flag, LatticePolytope, flags, normalize

_CHUNK = 4096


def _adjugate(F: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    D = det(F)
    if D == 0:
        raise FrameError("flag frame is degenerate")
    inv = mat_inv(F)
    adj = [[int(x * D) for x in row] for row in inv]
    return adj, int(D)


class _Frames:
    """Scaled flag frames of a centered polytope, indexed like its flags."""

    def __init__(self, P: LatticePolytope):
        fl = P.face_lattice
        self.P = P
        self.scale = 1
        for level in fl.faces:
            for F in level:
                self.scale = lcm(self.scale, len(F))
        C = np.array(P.coords, dtype=object)
        self.bary = []
        for level in fl.faces:
            rows = []
            for F in level:
                s = C[sorted(F)].sum(axis=0)
                rows.append([int(x) * (self.scale // len(F)) for x in s])
            self.bary.append(np.array(rows, dtype=object).reshape(len(level), P.dim))

    def frame(self, fl: Flag) -> list[list[int]]:
        return [list(self.bary[d][i]) for d, i in enumerate(fl.chain)]

    def stack(self, chains: np.ndarray) -> np.ndarray:
        k, n = chains.shape
        out = np.empty((k, n, n), dtype=object)
        for d in range(n):
            out[:, d, :] = self.bary[d][chains[:, d]]
        return out


def _vertex_codes(X: np.ndarray, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer code per row (last axis) and a mask of rows inside the box."""
    base = 2 * bound + 1
    inside = np.all(np.abs(X) <= bound, axis=-1)
    Y = np.clip(X, -bound, bound) + bound
    codes = np.zeros(X.shape[:-1], dtype=np.int64)
    for j in range(X.shape[-1]):
        codes = codes * base + Y[..., j]
    return codes, inside


def _transporters(P: LatticePolytope, src: Flag, dsts: Sequence[Flag], frames: _Frames | None = None):
    """Lattice-coordinate matrices carrying ``src`` to each of ``dsts`` (or None)."""
    frames = frames or _Frames(P)
    n = P.dim
    adj, D = _adjugate(frames.frame(src))
    V = np.array(P.coords, dtype=np.int64)
    bound = int(np.abs(V).max())
    ref_codes, _ = _vertex_codes(V, bound)
    ref_sorted = np.sort(ref_codes)
    adj_np = np.array(adj, dtype=object)
    max_adj = max(abs(x) for row in adj for x in row)
    max_fr = max(int(abs(b).max()) for b in frames.bary)
    use_int64 = max_adj * max_fr * n < 2**62
    if use_int64:
        adj_np = adj_np.astype(np.int64)

    chains_all = np.array([f.chain for f in dsts], dtype=np.int64).reshape(len(dsts), n)
    out: list = []
    for start in range(0, len(dsts), _CHUNK):
        chains = chains_all[start : start + _CHUNK]
        Fd = frames.stack(chains)
        if use_int64:
            Fd = Fd.astype(np.int64)
        N = np.matmul(adj_np[None, :, :], Fd)
        integral = np.all((N % D) == 0, axis=(1, 2))
        M = N // D
        ok = integral.copy()
        if ok.any():
            idx = np.nonzero(ok)[0]
            Mi = M[idx]
            if Mi.dtype == object:
                big = np.array([max(abs(int(x)) for x in m.flat) for m in Mi])
                small = big < 2**40
                ok[idx[~small]] = False
                idx, Mi = idx[small], Mi[small].astype(np.int64)
            img = np.matmul(V[None, :, :], Mi)
            codes, inside = _vertex_codes(img, bound)
            good = np.all(inside, axis=1) & np.all(np.sort(codes, axis=1) == ref_sorted, axis=1)
            ok[idx] = good
            M_ok = {int(i): Mi[j] for j, i in enumerate(idx)}
        for j in range(len(chains)):
            if ok[j]:
                out.append(tuple(tuple(int(x) for x in r) for r in M_ok[j]))
            else:
                out.append(None)
    return out


def _lattice_to_ambient(P: LatticePolytope, M) -> tuple:
    B, Binv = P.lattice.basis, P.lattice.inverse_basis
    return mat_mul(mat_mul(Binv, frac_mat(M)), B)


def _ambient_to_lattice(P: LatticePolytope, A) -> tuple:
    B, Binv = P.lattice.basis, P.lattice.inverse_basis
    return mat_mul(mat_mul(B, frac_mat(A)), Binv)


def _conjugate(P: LatticePolytope, w: AffineLatticeMap, M) -> AffineLatticeMap:
    g = AffineLatticeMap.linear_map(_lattice_to_ambient(P, M))
    if w.is_identity:
        return g
    return w.then(g).then(w.inverse())


def flag_transporter(P: LatticePolytope, src: Flag, dst: Flag) -> AffineLatticeMap | None:
    """The lattice symmetry of ``P`` sending flag ``src`` to ``dst``, if there is one."""
    Q, w = normalize(P)
    (M,) = _transporters(Q, src, [dst])
    if M is None:
        return None
    return _conjugate(Q, w, M)


@dataclass(frozen=True, eq=False)
class IsomGroup:
    """Isom(P), stored as integer matrices in the lattice coordinates of the
    normalized polytope; ``elements`` gives the maps in ambient coordinates of
    the original polytope."""

    polytope: LatticePolytope
    centered: LatticePolytope
    witness: AffineLatticeMap
    matrices: tuple
    generator_matrices: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.matrices)

    def __len__(self):
        return self.order

    @property
    def elements(self) -> list[AffineLatticeMap]:
        if "elements" not in self._cache:
            self._cache["elements"] = [
                _conjugate(self.centered, self.witness, M) for M in self.matrices
            ]
        return self._cache["elements"]

    @property
    def generators(self) -> list[AffineLatticeMap]:
        return [_conjugate(self.centered, self.witness, M) for M in self.generator_matrices]

    def ambient_matrices(self) -> set:
        """Linear parts in ambient coordinates of the normalized polytope."""
        if "amb" not in self._cache:
            self._cache["amb"] = {_lattice_to_ambient(self.centered, M) for M in self.matrices}
        return self._cache["amb"]

    def contains_matrix(self, A) -> bool:
        """Whether the ambient linear map ``A`` (normalized coordinates) is in the group."""
        M = _ambient_to_lattice(self.centered, A)
        if any(x.denominator != 1 for row in M for x in row):
            return False
        if "set" not in self._cache:
            self._cache["set"] = set(self.matrices)
        return tuple(tuple(int(x) for x in row) for row in M) in self._cache["set"]

    def permutes(self, points) -> bool:
        """Whether every element maps the lattice points ``points`` (ambient
        coordinates of the normalized polytope) onto the same set."""
        L = self.centered.lattice
        C = [L.coords(p) for p in points]
        if any(x.denominator != 1 for c in C for x in c):
            raise ValueError("points must be lattice points")
        X = np.array([[int(x) for x in c] for c in C], dtype=np.int64)
        bound = int(np.abs(X).max()) if X.size else 0
        ref, _ = _vertex_codes(X, bound)
        ref = np.sort(ref)
        mats = np.array(self.matrices, dtype=np.int64)
        for start in range(0, len(mats), _CHUNK):
            img = np.matmul(X[None, :, :], mats[start : start + _CHUNK])
            codes, inside = _vertex_codes(img, bound)
            if not (np.all(inside) and np.all(np.sort(codes, axis=1) == ref)):
                return False
        return True


def _generators(mats: list, seeds: list) -> list:
    """Greedy generating subset, starting from ``seeds``."""
    target = set(mats)
    if not target:
        return []
    n = len(mats[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens: list = []
    group = {ident}

    def close(gs):
        seen = {ident}
        frontier = [ident]
        arrs = [np.array(g, dtype=np.int64) for g in gs]
        while frontier:
            new = []
            for x in frontier:
                X = np.array(x, dtype=np.int64)
                for A in arrs:
                    y = tuple(map(tuple, (X @ A).tolist()))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return seen

    for g in list(seeds) + sorted(target):
        if len(group) == len(target):
            break
        if g is None or g in group:
            continue
        gens.append(g)
        group = close(gens)
    return gens


def isom_group(P: LatticePolytope) -> IsomGroup:
    """All lattice symmetries of ``P``, one per image of a reference flag."""
    Q, w = normalize(P)
    fs = flags(Q)
    frames = _Frames(Q)
    mats = [M for M in _transporters(Q, fs[0], fs, frames) if M is not None]
    seeds = _transporters(Q, fs[0], _adjacent_flags(Q, fs[0]), frames)
    if len(mats) == len(fs):
        gens = [M for M in seeds if M is not None]
    else:
        gens = _generators(mats, seeds)
    return IsomGroup(P, Q, w, tuple(sorted(mats)), tuple(gens))


def _adjacent_flags(P: LatticePolytope, f: Flag) -> list[Flag]:
    """For each ``i``, the unique flag differing from ``f`` exactly in dimension ``i``."""
    fl = P.face_lattice
    n = P.dim
    out = []
    for i in range(n):
        lo = set(fl.up[i - 1][f.chain[i - 1]]) if i > 0 else set(range(len(fl.faces[i])))
        hi = set(fl.down[i + 1][f.chain[i + 1]]) if i < n - 1 else set(range(len(fl.faces[i])))
        cands = sorted((lo & hi) - {f.chain[i]})
        if len(cands) != 1:
            raise FrameError("face lattice violates the diamond property")
        chain = list(f.chain)
        chain[i] = cands[0]
        out.append(Flag(tuple(chain)))
    return out


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    reference: Flag | None = None
    failing: Flag | None = None
    reason: str = ""

    def __bool__(self):
        return self.regular

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "reference_flag": list(self.reference.chain) if self.reference else None,
            "failing_flag": list(self.failing.chain) if self.failing else None,
            "reason": self.reason,
        }


def regularity_report(P: LatticePolytope) -> RegularityReport:
    """Flag transitivity via the ``n`` flags adjacent to a reference flag.

    The flag graph is connected and symmetries commute with adjacency, so
    transporters to the neighbours of one flag exist exactly when the group
    is transitive on all flags.
    """
    Q, _ = normalize(P)
    f0 = next(iter(_first_flag(Q)))
    nbrs = _adjacent_flags(Q, f0)
    for g, f in zip(_transporters(Q, f0, nbrs), nbrs):
        if g is None:
            return RegularityReport(False, f0, f, "no lattice symmetry maps the reference flag to this flag")
    return RegularityReport(True, f0)


def _first_flag(P: LatticePolytope):
    from .polytope import iter_flags

    for f in iter_flags(P):
        yield f
        return


def is_regular(P: LatticePolytope) -> bool:
    return regularity_report(P).regular


def vertex_orbit_check(P: LatticePolytope, W) -> bool:
    """Whether the Weyl group ``W`` (acting on ambient coordinates of ``P``)
    is transitive on the vertices of ``P``."""
    from .rootsys import weyl_orbit

    verts = set(P.vertices)
    return set(weyl_orbit(W, P.vertices[0])) == verts


def is_lattice_symmetry(P: LatticePolytope, A) -> bool:
    """Whether the ambient linear map ``A`` preserves the lattice and the vertex set."""
    g = AffineLatticeMap.linear_map(A)
    if not g.preserves(P.lattice):
        return False
    return {vec_mat(v, g.linear) for v in P.vertices} == set(P.vertices)


__all__ = [
    "IsomGroup",
    "RegularityReport",
    "flag_transporter",
    "is_lattice_symmetry",
    "is_regular",
    "isom_group",
    "regularity_report",
    "vertex_orbit_check",
]
