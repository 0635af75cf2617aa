"""Root systems read off lattice polytopes, their Cartan types and their groups.

Only simply-laced types (A, D, E and products) are handled.  Cartan integers
are obtained from root strings, so no invariant inner product is needed.
Constructed ("standard") root systems are realised in the basis of
fundamental weights: the weight lattice is ``Z^n`` and simple root ``i`` is
row ``i`` of the Cartan matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import (
    BudgetExceededError,
    NotRootError,
    NotRootSystemError,
    UnsupportedTypeError,
)
from .intlat import (
    Lattice,
    denominator_lcm,
    dot,
    frac_mat,
    frac_vec,
    identity,
    mat_inv,
    mat_mul,
    primitive_int,
    rank,
    saturate,
    solve_in_span,
    vec_mat,
)

Component = tuple[str, int]

E_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}


# ---------------------------------------------------------------------------
# Bourbaki Cartan matrices


def dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram with Bourbaki node numbering (0-based)."""
    if family == "A" and n >= 1:
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D" and n >= 4:
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E" and n in (6, 7, 8):
        return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    raise UnsupportedTypeError(f"no simply-laced diagram {family}{n}")


def cartan_matrix(components: Sequence[Component]) -> tuple[tuple[int, ...], ...]:
    """Block-diagonal Cartan matrix of a product of simply-laced types."""
    total = sum(r for _, r in components)
    C = [[2 * (i == j) for j in range(total)] for i in range(total)]
    off = 0
    for fam, r in components:
        for i, j in dynkin_edges(fam, r):
            C[off + i][off + j] = C[off + j][off + i] = -1
        off += r
    return tuple(map(tuple, C))


def weyl_order(components: Sequence[Component]) -> int:
    out = 1
    for fam, r in components:
        if fam == "A":
            out *= factorial(r + 1)
        elif fam == "D":
            out *= 2 ** (r - 1) * factorial(r)
        else:
            out *= E_ORDERS[r]
    return out


def type_label(components: Sequence[Component]) -> str:
    if not components:
        return "empty"
    groups = []
    for comp, grp in itertools.groupby(components):
        k = len(list(grp))
        groups.append(f"{comp[0]}{comp[1]}" + (f"^{k}" if k > 1 else ""))
    return "x".join(groups)


# ---------------------------------------------------------------------------
# axioms and Cartan integers


def _scaled(roots: Iterable[Sequence]) -> tuple[list[tuple[int, ...]], int]:
    roots = [frac_vec(r) for r in roots]
    s = denominator_lcm(x for r in roots for x in r)
    return [tuple(int(x * s) for x in r) for r in roots], s


def _neg(v):
    return tuple(-x for x in v)


def _string_value(rs: set, a: tuple, b: tuple) -> int:
    """``p - q`` for the ``a``-string ``b - p a, ..., b + q a`` inside ``rs``."""
    if b == a:
        return 2
    if b == _neg(a):
        return -2
    p = 0
    cur = b
    while True:
        cur = tuple(x - y for x, y in zip(cur, a))
        if cur not in rs:
            break
        p += 1
    q = 0
    cur = b
    while True:
        cur = tuple(x + y for x, y in zip(cur, a))
        if cur not in rs:
            break
        q += 1
    return p - q


def cartan_integers(roots: Iterable[Sequence], alpha: Sequence, beta: Sequence) -> int:
    """``<beta, alpha^vee>`` computed from the alpha-string through beta."""
    R, s = _scaled(roots)
    rs = set(R)
    a = tuple(int(Fraction(x) * s) for x in alpha)
    b = tuple(int(Fraction(x) * s) for x in beta)
    if a not in rs:
        raise NotRootError("alpha is not in the root set")
    if b not in rs:
        raise NotRootError("beta is not in the root set")
    return _string_value(rs, a, b)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _independent(rows):
    chosen = []
    for r in rows:
        if rank(chosen + [r]) > len(chosen):
            chosen.append(r)
    return chosen


def verify_root_axioms(roots: Iterable[Sequence], L: Lattice | None = None) -> AxiomReport:
    """Check that ``roots`` is a reduced crystallographic root system.

    Checks: no zero, symmetric, reduced, closed under the string-defined
    reflections, Cartan pairings linear in the first argument, and (when
    ``L`` is given) ``root lattice <= L <= weight lattice``.
    """
    roots = [frac_vec(r) for r in roots]
    if not roots:
        return AxiomReport(True, "empty root system")
    R, s = _scaled(roots)
    rs = set(R)
    if len(rs) != len(R):
        return AxiomReport(False, "repeated roots")
    if any(not any(a) for a in R):
        return AxiomReport(False, "zero is a root")
    if any(_neg(a) not in rs for a in R):
        return AxiomReport(False, "root set is not symmetric")
    directions: dict = {}
    for a in R:
        p = primitive_int(a)
        key = max(p, _neg(p))
        directions.setdefault(key, []).append(a)
    if any(len(v) != 2 for v in directions.values()):
        return AxiomReport(False, "not reduced: parallel roots other than +-alpha")

    B = _independent(R)
    k = len(B)
    # coordinates of each root in the basis B (integral span not required)
    coord = {a: solve_in_span(a, B) for a in R}
    for a in R:
        vals = [_string_value(rs, a, b) for b in B]
        # functional c with B_i . c = vals_i, expressed through coordinates
        for b in R:
            n_ba = _string_value(rs, a, b)
            refl = tuple(x - n_ba * y for x, y in zip(b, a))
            if refl not in rs:
                return AxiomReport(False, f"not closed under the reflection along {a}")
            if sum(c * v for c, v in zip(coord[b], vals)) != n_ba:
                return AxiomReport(False, "Cartan pairing is not linear")

    if L is not None:
        if k != L.dim:
            return AxiomReport(False, "roots do not span the lattice's space")
        for r in roots:
            if not L.contains(r):
                return AxiomReport(False, "a root is not a lattice vector")
        for lam in L.basis:
            c = solve_in_span(tuple(x * s for x in lam), B)
            for a in R:
                vals = [_string_value(rs, a, b) for b in B]
                pairing = sum(x * v for x, v in zip(c, vals))
                if Fraction(pairing).denominator != 1:
                    return AxiomReport(False, "lattice is not inside the weight lattice")
    return AxiomReport(True, "")


# ---------------------------------------------------------------------------
# root systems


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A simply-laced root system in some coordinates.

    ``simple_roots`` follow Bourbaki numbering component by component, and
    ``components`` lists ``(family, rank)`` in the same order.
    """

    roots: tuple
    simple_roots: tuple
    cartan: tuple
    components: tuple
    lattice: Lattice | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def ambient_dim(self) -> int:
        return len(self.roots[0]) if self.roots else 0

    @property
    def type(self) -> list[Component]:
        return list(self.components)

    @property
    def label(self) -> str:
        return type_label(self.components)

    @property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    def coroot_matrix(self):
        """Columns are the coroot functionals of the simple roots (full rank only)."""
        if "X" not in self._cache:
            T = self.simple_roots
            self._cache["X"] = mat_mul(mat_inv(T), self.cartan)
        return self._cache["X"]

    def weight_coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """``(<v, alpha_i^vee>)_i`` for a vector in the realization coordinates."""
        return vec_mat(frac_vec(v), self.coroot_matrix())

    def positive_roots(self) -> list:
        T = self.simple_roots
        out = []
        for r in self.roots:
            c = solve_in_span(r, T)
            if all(x >= 0 for x in c):
                out.append(r)
        return out

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.root_set == other.root_set

    def __hash__(self):
        return hash(self.root_set)

    @classmethod
    def from_roots(cls, roots: Iterable[Sequence], lattice: Lattice | None = None) -> "RootSystem":
        roots = sorted(set(frac_vec(r) for r in roots))
        rep = verify_root_axioms(roots, lattice)
        if not rep:
            raise NotRootSystemError(rep.reason)
        simple, C, comps = _simple_system(roots)
        return cls(tuple(roots), tuple(simple), C, tuple(comps), lattice)


def _simple_system(roots):
    """Simple roots (Bourbaki order), Cartan matrix and components."""
    if not roots:
        return [], (), []
    R, s = _scaled(roots)
    rs = set(R)
    N = 1 + max(abs(x) for r in R for x in r)
    f = [N**i for i in range(len(R[0]))]
    pos = [a for a in R if dot(f, a) > 0]
    pos_set = set(pos)
    simple = []
    for b in pos:
        if not any(tuple(x - y for x, y in zip(b, a)) in pos_set for a in pos if a != b):
            simple.append(b)
    simple.sort()
    k = len(simple)
    C = [[_string_value(rs, simple[j], simple[i]) for j in range(k)] for i in range(k)]
    order, comps = _classify_diagram(C)
    simple = [simple[i] for i in order]
    C = tuple(tuple(C[i][j] for j in order) for i in order)
    if C != cartan_matrix(comps):
        raise UnsupportedTypeError("diagram relabelling failed")
    return [tuple(Fraction(x, s) for x in r) for r in simple], C, comps


def _classify_diagram(C) -> tuple[list[int], list[Component]]:
    k = len(C)
    for i in range(k):
        for j in range(k):
            if i != j and (C[i][j] not in (0, -1) or C[i][j] != C[j][i]):
                raise UnsupportedTypeError("not a simply-laced Cartan matrix")
    adj = {i: [j for j in range(k) if j != i and C[i][j]] for i in range(k)}
    seen: set = set()
    found = []
    for start in range(k):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        found.append(_label_component(sorted(comp), adj))
    rank_of = {"A": 0, "D": 1, "E": 2}
    found.sort(key=lambda t: (rank_of[t[0]], t[1], min(t[2])))
    order = [i for _, _, nodes in found for i in nodes]
    return order, [(fam, r) for fam, r, _ in found]


def _label_component(nodes: list[int], adj) -> tuple[str, int, list[int]]:
    k = len(nodes)
    n_edges = sum(len(adj[v]) for v in nodes) // 2
    if n_edges != k - 1:
        raise UnsupportedTypeError("Dynkin diagram has a cycle")
    if k == 1:
        return ("A", 1, nodes)
    deg = {v: len(adj[v]) for v in nodes}
    branch = [v for v in nodes if deg[v] >= 3]
    if not branch:
        start = min(v for v in nodes if deg[v] == 1)
        path, prev = [start], None
        while len(path) < k:
            nxt = [w for w in adj[path[-1]] if w != prev][0]
            prev = path[-1]
            path.append(nxt)
        return ("A", k, path)
    if len(branch) > 1 or deg[branch[0]] != 3:
        raise UnsupportedTypeError("unrecognised Dynkin diagram")
    c = branch[0]
    arms = []
    for w in sorted(adj[c]):
        arm, prev = [w], c
        while True:
            nxt = [x for x in adj[arm[-1]] if x != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)  # from the branch node outwards
    arms.sort(key=lambda a: (len(a), a[0]))
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        long_arm = arms[2]
        chain = list(reversed(long_arm)) + [c]
        return ("D", k, chain + arms[0] + arms[1])
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        short, a2, rest = arms
        order = [a2[1], short[0], a2[0], c] + rest
        return ("E", k, order)
    raise UnsupportedTypeError("unrecognised Dynkin diagram")


def cartan_type(phi) -> list[Component]:
    """Cartan type of a root system (RootSystem or plain collection of roots)."""
    if isinstance(phi, RootSystem):
        return list(phi.components)
    roots = sorted(set(frac_vec(r) for r in phi))
    return list(_simple_system(roots)[2])


def standard_root_system(components: Sequence[Component]) -> RootSystem:
    """The root system of the given type in fundamental-weight coordinates."""
    comps = tuple((f, int(r)) for f, r in components)
    for f, r in comps:
        dynkin_edges(f, r)
    C = cartan_matrix(comps)
    n = len(C)
    simple = [tuple(Fraction(x) for x in row) for row in C]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                w = tuple(x - v[i] * a for x, a in zip(v, C[i]))
                if w not in roots:
                    roots.add(w)
                    new.append(w)
        frontier = new
    roots |= {_neg(r) for r in roots}
    return RootSystem(tuple(sorted(roots)), tuple(simple), C, comps, Lattice.standard(n))


def epsilon_vectors(family: str, n: int) -> list[tuple[int, ...]]:
    """Weight coordinates of the Bourbaki vectors ``eps_i`` for A_n (n+1 of them) or D_n."""
    if family == "A":
        simple_eps = [[int(k == i) - int(k == i + 1) for k in range(n + 1)] for i in range(n)]
        m = n + 1
    elif family == "D":
        simple_eps = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
        simple_eps.append([int(k in (n - 2, n - 1)) for k in range(n)])
        m = n
    else:
        raise UnsupportedTypeError(family)
    return [tuple(simple_eps[j][i] for j in range(n)) for i in range(m)]


# ---------------------------------------------------------------------------
# extraction from polytopes


def extract_roots(P) -> RootSystem:
    """Primitive lattice generators of the edge directions of ``P``, both signs."""
    from .polytope import _edges

    roots = set()
    for e in _edges(P):
        i, j = sorted(e)
        d = tuple(a - b for a, b in zip(P.coords[j], P.coords[i]))
        u = primitive_int(d)
        for w in (u, _neg(u)):
            roots.add(P.lattice.point(w))
    return RootSystem.from_roots(roots, P.lattice)


def root_lattice(phi: RootSystem) -> Lattice:
    return Lattice(phi.simple_roots)


def weight_lattice(phi: RootSystem) -> Lattice:
    """Lattice of the fundamental weights ``C^-1 T``."""
    C = frac_mat(phi.cartan)
    return Lattice(mat_mul(mat_inv(C), phi.simple_roots))


def fundamental_weights(phi: RootSystem) -> tuple:
    return mat_mul(mat_inv(frac_mat(phi.cartan)), phi.simple_roots)


def face_root_system(phi: RootSystem, F: Sequence[Sequence]) -> RootSystem:
    """The roots of ``phi`` lying in the span of ``F``, re-typed and re-verified."""
    F = [frac_vec(v) for v in F if any(v)]
    basis = _independent(F)
    if not basis:
        return RootSystem((), (), (), (), None)
    inside = [r for r in phi.roots if solve_in_span(r, basis) is not None]
    if not inside:
        return RootSystem((), (), (), (), None)
    if phi.lattice is not None:
        L = phi.lattice
        sub = saturate([L.coords(v) for v in basis], L.dim)
        local = [solve_in_span(L.coords(r), sub) for r in inside]
        rep = verify_root_axioms(local, Lattice.standard(len(sub)))
    else:
        rep = verify_root_axioms([solve_in_span(r, basis) for r in inside])
    if not rep:
        raise NotRootSystemError(rep.reason)
    roots = sorted(inside)
    simple, C, comps = _simple_system(roots)
    return RootSystem(tuple(roots), tuple(simple), C, tuple(comps), None)


# ---------------------------------------------------------------------------
# Weyl and automorphism groups


def _closure(gens, limit: int):
    n = len(gens[0])
    I = frac_mat(identity(n))
    seen = {I}
    frontier = [I]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = mat_mul(g, s)
                if h not in seen:
                    seen.add(h)
                    new.append(h)
                    if len(seen) > limit:
                        raise BudgetExceededError(f"group has more than {limit} elements")
        frontier = new
    return sorted(seen)


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Generated by the simple reflections, as matrices acting on rows."""

    root_system: RootSystem
    generators: tuple

    @property
    def order(self) -> int:
        return weyl_order(self.root_system.components)

    def elements(self, limit: int = 200_000) -> list:
        if self.order > limit:
            raise BudgetExceededError(f"|W| = {self.order} exceeds {limit}")
        return _closure(self.generators, limit)


def weyl_group(phi: RootSystem) -> WeylGroup:
    X = phi.coroot_matrix()
    n = phi.ambient_dim
    gens = []
    for i, a in enumerate(phi.simple_roots):
        gens.append(
            tuple(
                tuple(Fraction(int(r == s)) - X[r][i] * a[s] for s in range(n)) for r in range(n)
            )
        )
    return WeylGroup(phi, tuple(gens))


def weyl_orbit(W: WeylGroup, v: Sequence) -> list[tuple[Fraction, ...]]:
    """Orbit of ``v`` under ``W`` by closure under the simple reflections (sorted)."""
    v = frac_vec(v)
    seen = {v}
    frontier = [v]
    while frontier:
        new = []
        for x in frontier:
            for s in W.generators:
                y = vec_mat(x, s)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def diagram_automorphisms(C: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Permutations ``p`` of the nodes with ``C[p[i]][p[j]] == C[i][j]``."""
    k = len(C)
    out = []

    def extend(p):
        i = len(p)
        if i == k:
            out.append(tuple(p))
            return
        for t in range(k):
            if t in p:
                continue
            if C[t][t] != C[i][i]:
                continue
            if all(C[t][p[j]] == C[i][j] for j in range(i)):
                p.append(t)
                extend(p)
                p.pop()

    extend([])
    return out


@dataclass(frozen=True, eq=False)
class AutGroup:
    weyl: WeylGroup
    diagram_perms: tuple
    diagram_maps: tuple

    @property
    def order(self) -> int:
        return self.weyl.order * len(self.diagram_perms)

    @property
    def generators(self) -> tuple:
        return tuple(self.weyl.generators) + tuple(self.diagram_maps)

    def contains(self, g: Sequence[Sequence]) -> bool:
        """Whether the linear map ``g`` permutes the roots."""
        g = frac_mat(g)
        rs = self.weyl.root_system.root_set
        return all(vec_mat(r, g) in rs for r in rs)

    def elements(self, limit: int = 200_000) -> list:
        if self.order > limit:
            raise BudgetExceededError(f"|Aut| = {self.order} exceeds {limit}")
        return _closure(self.generators, limit)


def aut_group(phi: RootSystem) -> AutGroup:
    W = weyl_group(phi)
    T = frac_mat(phi.simple_roots)
    Tinv = mat_inv(T)
    perms = diagram_automorphisms(phi.cartan)
    maps = []
    k = phi.rank
    for p in perms:
        Pm = [[Fraction(int(p[i] == j)) for j in range(k)] for i in range(k)]
        maps.append(mat_mul(mat_mul(Tinv, Pm), T))
    return AutGroup(W, tuple(perms), tuple(maps))


def weight_permutation_matrix(p: Sequence[int]) -> tuple:
    """In weight coordinates a diagram automorphism permutes the coordinates."""
    k = len(p)
    return tuple(tuple(int(p[i] == j) for j in range(k)) for i in range(k))


def roots_in_lattice_coords(phi: RootSystem, L: Lattice) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in L.coords(r)) for r in phi.roots]

