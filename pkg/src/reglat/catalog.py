"""The classified families of centered primitive regular lattice polytopes.

Every family is the hull of a Weyl orbit ``W . s0`` in a lattice between the
root and weight lattices.  Everything is written in fundamental-weight
coordinates of the standard root system, so the weight lattice is ``Z^n``
and simple root ``i`` is row ``i`` of the Cartan matrix.

Entry keys are ``S<d>`` (simplices), ``C1 C2 C3`` (cubes), ``CC1 CC2 CC3``
(cocubes), ``H1 H2`` (hexagons) and ``D1 D2`` (24-cells); a full label adds
the dimension, e.g. ``CC3^4``.  In dimension 2 several constructions
coincide and resolve to one canonical class through :data:`ALIASES_2D`; in
dimension 1 every centered primitive segment is the class ``C1^1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .duality import star_dual, vee_dual
from .errors import (
    BadEntryError,
    BudgetExceededError,
    ReglatError,
    UnsupportedDimensionError,
    UnsupportedTypeError,
)
from .intlat import AffineLatticeMap, Lattice, frac_mat, mat_mul
from .polytope import (
    LatticePolytope,
    edge_point_counts,
    face_subpolytope,
    facet_vertex_counts,
    flag_count,
    hull,
    lattice_point_count,
    normalize,
)
from .rootsys import (
    RootSystem,
    cartan_matrix,
    diagram_automorphisms,
    epsilon_vectors,
    extract_roots,
    standard_root_system,
    type_label,
    weight_permutation_matrix,
    weyl_group,
    weyl_orbit,
)
from .symmetry import isom_group, regularity_report

#: dimension-2 constructions that coincide with a class of the table
ALIASES_2D = {"C3": "C2", "CC1": "C1", "CC2": "C2", "CC3": "C1"}

_NAME = re.compile(r"^(S\d+|C[123]|CC[123]|H[12]|D[12])\^(\d+)$")


def label(key: str, n: int) -> str:
    return f"{key}^{n}"


def parse_label(name: str) -> tuple[str, int]:
    m = _NAME.match(name.strip())
    if not m:
        raise BadEntryError(f"cannot parse entry name {name!r}")
    return m.group(1), int(m.group(2))


def canonical_label(name: str) -> str:
    """Resolve dimension coincidences (all segments, the dimension-2 squares)."""
    key, n = parse_label(name)
    if n == 1:
        return "C1^1"
    if n == 2 and key in ALIASES_2D:
        return label(ALIASES_2D[key], 2)
    return label(key, n)


@dataclass(frozen=True)
class CatalogEntry:
    """One row of the classification for a given dimension.

    ``card``, ``star_dual`` and the other expected values are the ones this
    library computes and certifies; ``printed`` holds the differing values of
    the reference classification table.
    """

    key: str
    n: int
    family: str
    components: tuple
    lattice_descriptor: str
    lattice_generators: tuple
    s0: tuple
    card: int
    edge_points: int
    facet: str
    vee_dual: str
    star_dual: str
    isom_order: int
    printed: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def name(self) -> str:
        return label(self.key, self.n)

    @property
    def type_label(self) -> str:
        return type_label(self.components)

    @property
    def lattice(self) -> Lattice:
        return Lattice.from_generators(self.lattice_generators, self.n)

    def printed_value(self, column: str):
        return self.printed.get(column, getattr(self, column))

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "type": self.type_label,
            "isom_order": self.isom_order,
            "lattice": self.lattice_descriptor,
            "s0": list(self.s0),
            "card": self.card,
            "edges": self.edge_points,
            "facet": self.facet,
            "vee_dual": self.vee_dual,
            "star_dual": self.star_dual,
            "printed": dict(self.printed),
        }


# ---------------------------------------------------------------------------
# lattice descriptors in weight coordinates


def _rows(C) -> list[tuple[int, ...]]:
    return [tuple(r) for r in C]


def _unit(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _simplex(n: int, d: int) -> CatalogEntry:
    if n < 1 or (n + 1) % d:
        raise BadEntryError(f"S{d}^{n} needs d | n+1")
    comps = (("A", n),)
    gens = _rows(cartan_matrix(comps)) + [_unit(n, 0, d)]
    facet = canonical_label(label(f"S{n}", n - 1)) if n > 1 else ""
    return CatalogEntry(
        f"S{d}", n, "simplex", comps, f"Lambda_d with #(Lambda_P/Lambda) = {d}",
        tuple(gens), _unit(n, 0, d), comb(n + d, n) + (1 if d <= n else 0), d + 1,
        facet, label(f"S{d}", n), label(f"S{(n + 1) // d}", n), factorial(n + 1),
    )


def _cube(key: str, n: int) -> CatalogEntry:
    if n < 1 or (n == 1 and key != "C1"):
        raise BadEntryError(f"{key}^{n} is not a valid cube entry")
    comps = (("A", 1),) * n
    ones = (1,) * n
    twos = (2,) * n
    roots = [_unit(n, i, 2) for i in range(n)]
    iso = 2**n * factorial(n)
    cc = (lambda k: canonical_label(label(k, n))) if n >= 2 else (lambda k: "C1^1")
    sub = (lambda k: canonical_label(label(k, n - 1))) if n >= 2 else (lambda k: "")
    printed: dict = {}
    if key == "C1":
        e = CatalogEntry("C1", n, "cube", comps, "Lambda_R", tuple(roots), twos,
                         3**n, 3, sub("C1"), cc("CC2"), cc("CC2"), iso)
    elif key == "C2":
        e = CatalogEntry("C2", n, "cube", comps, "k_i all of the same parity",
                         tuple(roots + [ones]), ones, 2**n + 1, 2, sub("C1"),
                         cc("CC3"), cc("CC1"), iso)
        printed = {"star_dual": cc("CC3")}
    else:
        gens = [_unit(n, i, 2) for i in range(n)] + [
            tuple(1 if j in (i, i + 1) else 0 for j in range(n)) for i in range(n - 1)
        ]
        if n % 2 == 0:
            s0, card, edges = ones, (3**n + 1) // 2, 2
            printed_card = card
        else:
            s0, card, edges = twos, (5**n + 1) // 2, 3
            printed_card = (5**n - 1) // 2
        e = CatalogEntry("C3", n, "cube", comps, "sum k_i even", tuple(gens), s0,
                         card, edges, sub("C3"), cc("CC1"), cc("CC3"), iso)
        printed = {"star_dual": cc("CC1")}
        if printed_card != card:
            printed["card"] = printed_card
    return _with_printed(e, printed)


def _cocube(key: str, n: int) -> CatalogEntry:
    if n < 3:
        raise BadEntryError("cocubes start in dimension 3")
    iso = 2**n * factorial(n)
    if n == 3:
        comps = (("A", 3),)
        C = cartan_matrix(comps)
        # D3 = A3 with the vector representation on the middle node
        s0 = (0, 1, 0)
        lat = {
            "CC1": (_rows(C), "Lambda_R"),
            "CC2": (_rows(C) + [(2, 0, 0)], "sum Z eps_i (index 2 in Lambda_P)"),
            "CC3": (_rows(C) + [(1, 0, 0)], "Lambda_P"),
        }
    else:
        comps = (("D", n),)
        C = cartan_matrix(comps)
        s0 = _unit(n, 0)
        lat = {
            "CC1": (_rows(C), "Lambda_R"),
            "CC2": (epsilon_vectors("D", n), "sum Z eps_i"),
            "CC3": ([_unit(n, i) for i in range(n)], "Lambda_P"),
        }
    gens, desc = lat[key]
    simplex_facet = label(f"S{n}", n - 1)
    if key == "CC1":
        e = CatalogEntry(key, n, "cocube", comps, desc, tuple(gens), tuple(2 * x for x in s0),
                         2 * n * n + 1, 3, simplex_facet, label("C3", n), label("C2", n), iso)
        printed = {"card": 4 * n * n + 1, "star_dual": label("C3", n)}
    elif key == "CC2":
        e = CatalogEntry(key, n, "cocube", comps, desc, tuple(gens), s0, 2 * n + 1, 2,
                         simplex_facet, label("C1", n), label("C1", n), iso)
        printed = {}
    else:
        facet = label(f"S{n // 2}", n - 1) if n % 2 == 0 else simplex_facet
        e = CatalogEntry(key, n, "cocube", comps, desc, tuple(gens), s0, 2 * n + 1, 2,
                         facet, label("C2", n), label("C3", n), iso)
        printed = {"star_dual": label("C2", n)}
    return _with_printed(e, printed)


def _hexagon(key: str, n: int) -> CatalogEntry:
    if n != 2:
        raise BadEntryError("hexagons live in dimension 2")
    comps = (("A", 2),)
    C = _rows(cartan_matrix(comps))
    if key == "H1":
        return CatalogEntry("H1", 2, "hexagon", comps, "Lambda_R", tuple(C), (1, 1), 7, 2,
                            "C1^1", "H2^2", "H1^2", 12)
    return CatalogEntry("H2", 2, "hexagon", comps, "Lambda_P", ((1, 0), (0, 1)), (1, 1), 13, 2,
                        "C1^1", "H1^2", "H2^2", 12)


def _cell24(key: str, n: int) -> CatalogEntry:
    if n != 4:
        raise BadEntryError("24-cells live in dimension 4")
    comps = (("D", 4),)
    C = _rows(cartan_matrix(comps))
    if key == "D1":
        return CatalogEntry("D1", 4, "24-cell", comps, "Lambda_R", tuple(C), (0, 1, 0, 0), 25, 2,
                            "CC1^3", "D2^4", "D1^4", 1152)
    e = CatalogEntry("D2", 4, "24-cell", comps, "Lambda_P", tuple(_unit(4, i) for i in range(4)),
                     (0, 1, 0, 0), 49, 2, "CC2^3", "D1^4", "D2^4", 1152)
    return _with_printed(e, {"card": 81})


def _with_printed(e: CatalogEntry, printed: dict) -> CatalogEntry:
    printed = {k: v for k, v in printed.items() if v != getattr(e, k)}
    object.__setattr__(e, "printed", printed)
    return e


@lru_cache(maxsize=None)
def entry(key: str, n: int | None = None) -> CatalogEntry:
    """Look up an entry by key and dimension, or by a full label like ``"S2^3"``."""
    if n is None:
        key, n = parse_label(key)
    if key.startswith("S") and key[1:].isdigit():
        return _simplex(n, int(key[1:]))
    if key in ("C1", "C2", "C3"):
        return _cube(key, n)
    if key in ("CC1", "CC2", "CC3"):
        return _cocube(key, n)
    if key in ("H1", "H2"):
        return _hexagon(key, n)
    if key in ("D1", "D2"):
        return _cell24(key, n)
    raise BadEntryError(f"unknown entry {key!r}")


def table(n: int) -> list[CatalogEntry]:
    """The classes of centered primitive regular lattice polytopes in dimension ``n``."""
    if n < 2:
        raise UnsupportedDimensionError("the classification starts in dimension 2")
    out = [entry(f"S{d}", n) for d in _divisors(n + 1)]
    out += [entry(k, n) for k in ("C1", "C2")]
    if n == 2:
        out += [entry("H1", 2), entry("H2", 2)]
        return out
    out.append(entry("C3", n))
    out += [entry(k, n) for k in ("CC1", "CC2", "CC3")]
    if n == 4:
        out += [entry("D1", 4), entry("D2", 4)]
    return out


# ---------------------------------------------------------------------------
# construction


@lru_cache(maxsize=None)
def _root_system(components: tuple) -> RootSystem:
    return standard_root_system(components)


@lru_cache(maxsize=None)
def build(e: CatalogEntry) -> LatticePolytope:
    """Hull of the Weyl orbit of ``s0`` in the entry's lattice (weight coordinates)."""
    R = _root_system(e.components)
    L = e.lattice
    if not L.contains(e.s0):
        raise BadEntryError(f"{e.name}: dominant vertex outside the lattice")
    P = hull(weyl_orbit(weyl_group(R), e.s0), L)
    return P


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationResult:
    status: str  # "match" | "not_regular" | "unmatched"
    entry: CatalogEntry | None = None
    witness: AffineLatticeMap | None = None
    diagnostic: str = ""

    @property
    def name(self) -> str | None:
        return self.entry.name if self.entry else None

    def __bool__(self):
        return self.status == "match"

    def to_dict(self) -> dict:
        d = {"status": self.status, "entry": self.name, "diagnostic": self.diagnostic}
        if self.witness is not None:
            d["witness"] = {
                "linear": [[str(x) for x in r] for r in self.witness.linear],
                "translation": [str(x) for x in self.witness.translation],
                "homothety_ratio": str(self.witness.homothety_ratio),
            }
        return d


def _segment_entry() -> CatalogEntry:
    return entry("C1", 1)


def _undual(P: LatticePolytope) -> LatticePolytope:
    if not P.dual:
        return P
    return LatticePolytope(P.lattice, P.coords, P.facets)


def classify(P: LatticePolytope) -> ClassificationResult:
    """Identify ``P`` with a catalog class and give a map carrying it onto the model."""
    Q, w = normalize(P)
    Q = _undual(Q)
    n = Q.dim
    if n == 1:
        return ClassificationResult("match", _segment_entry(), w.then(_segment_map(Q)))
    rep = regularity_report(Q)
    if not rep:
        return ClassificationResult("not_regular", diagnostic=rep.reason)
    try:
        phi = extract_roots(Q)
    except ReglatError as exc:  # pragma: no cover - regular polytopes give root systems
        return ClassificationResult("unmatched", diagnostic=str(exc))
    comps = tuple(phi.components)
    X = phi.coroot_matrix()
    Lw = Q.lattice.transform(X)
    verts_w = [tuple(sum(v[k] * X[k][j] for k in range(n)) for j in range(n)) for v in Q.vertices]
    dominant = [v for v in verts_w if all(x >= 0 for x in v)]
    if len(dominant) != 1:
        return ClassificationResult("unmatched", diagnostic="no unique dominant vertex")
    s0 = dominant[0]
    try:
        candidates = table(n)
    except UnsupportedDimensionError:
        candidates = []
    for e in candidates:
        if tuple(e.components) != comps:
            continue
        target = build(e)
        if Q == target:
            return ClassificationResult("match", e, w)
        Le = e.lattice
        for p in diagram_automorphisms(cartan_matrix(comps)):
            Pm = weight_permutation_matrix(p)
            img = tuple(sum(s0[i] * Pm[i][j] for i in range(n)) for j in range(n))
            if img != tuple(Fraction(x) for x in e.s0):
                continue
            if Lw.transform(Pm) != Le:
                continue
            A = mat_mul(X, frac_mat(Pm))
            g = w.then(AffineLatticeMap.linear_map(A))
            return ClassificationResult("match", e, g)
    return ClassificationResult(
        "unmatched", diagnostic=f"regular with root system {type_label(comps)} but no catalog match"
    )


def _segment_map(Q: LatticePolytope) -> AffineLatticeMap:
    """Carry a centered primitive segment onto the model segment of ``C1^1``."""
    target = build(_segment_entry())
    a = Q.vertices[-1][0]
    b = target.vertices[-1][0]
    return AffineLatticeMap.linear_map([[b / a]])


# ---------------------------------------------------------------------------
# counting


def simplex_count(n: int, d: int, *, all_residues: bool = False) -> int:
    """Lattice points of ``S_d^n`` from the residue-class tuple count.

    Barycentric coordinates scaled by ``d(n+1)`` give tuples of naturals
    ``a_1..a_{n+1}`` with sum ``d(n+1)`` and all ``a_i`` congruent to one
    ``tau`` modulo ``n+1``.  Such a point lies in ``Lambda_d`` exactly when
    ``tau = 0 mod d``; ``all_residues=True`` sums over every ``tau`` and
    so counts the points of the weight lattice instead.
    """
    if n < 1 or d < 1 or (n + 1) % d:
        raise BadEntryError(f"S{d}^{n} needs d | n+1")
    m = n + 1
    total = d * m
    out = 0
    for tau in range(m):
        if not all_residues and tau % d:
            continue
        out += _count_tuples(m, tau, m, total)
    return out


def _count_tuples(length: int, tau: int, modulus: int, total: int) -> int:
    """Ordered tuples of naturals congruent to ``tau`` with the given sum (enumerated by DP)."""
    values = list(range(tau, total + 1, modulus))
    ways = [1] + [0] * total
    for _ in range(length):
        nxt = [0] * (total + 1)
        for s, c in enumerate(ways):
            if c:
                for v in values:
                    if s + v > total:
                        break
                    nxt[s + v] += c
        ways = nxt
    return ways[total]


# ---------------------------------------------------------------------------
# negative checks


@dataclass(frozen=True)
class NonexistenceReport:
    kind: str
    n: int
    regular: dict  # lattice descriptor -> bool
    facet_vertex_counts: dict
    failing_flags: dict
    detail: str = ""

    @property
    def any_regular(self) -> bool:
        return any(self.regular.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "regular": self.regular,
            "facet_vertex_counts": {str(k): v for k, v in self.facet_vertex_counts.items()},
            "failing_flags": self.failing_flags,
            "detail": self.detail,
        }


def demicube(n: int) -> LatticePolytope:
    """Hull of the ``W(D_n)``-orbit of the half-spin weight ``omega_{n-1}`` in ``Lambda_P``."""
    if n < 4:
        raise BadEntryError("the demicube construction needs n >= 4")
    R = _root_system((("D", n),))
    return hull(weyl_orbit(weyl_group(R), _unit(n, n - 2)), Lattice.standard(n))


def e_root_polytope(rank: int, lattice: str) -> LatticePolytope:
    R = _root_system((("E", rank),))
    L = R.lattice if lattice == "P" else Lattice(cartan_matrix((("E", rank),)))
    return hull(R.roots, L)


def check_exclusion(kind: str, n: int | None = None, *, allow_large: bool = False) -> NonexistenceReport:
    """Run a negative check: ``"demicube"`` (with ``n``) or ``"e6"``/``"e7"``/``"e8"``."""
    kind = kind.lower()
    if kind == "demicube":
        if n is None:
            raise BadEntryError("demicube needs n")
        P = demicube(n)
        rep = regularity_report(P)
        fvc = dict(sorted(facet_vertex_counts(P).items()))
        failing = {"Lambda_P": _flags_dict(rep)}
        return NonexistenceReport("demicube", n, {"Lambda_P": rep.regular}, fvc, failing,
                                  rep.reason)
    m = re.fullmatch(r"e([678])", kind)
    if not m:
        raise UnsupportedTypeError(f"unknown exclusion check {kind!r}")
    rank = int(m.group(1))
    if rank > 6 and not allow_large:
        raise BudgetExceededError(f"E{rank} check is opt-in (allow_large=True)")
    regular, failing, fvc = {}, {}, {}
    for lat in ("R", "P"):
        P = e_root_polytope(rank, lat)
        rep = regularity_report(P)
        regular[f"Lambda_{lat}"] = rep.regular
        failing[f"Lambda_{lat}"] = _flags_dict(rep)
        fvc = dict(sorted(facet_vertex_counts(P).items()))
    return NonexistenceReport(f"E{rank}", rank, regular, fvc, failing, "hull of all roots")


def _flags_dict(rep) -> dict | None:
    if rep.regular:
        return None
    return {"reference": list(rep.reference.chain), "failing": list(rep.failing.chain)}


# ---------------------------------------------------------------------------
# verification of entries


@dataclass
class Check:
    column: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        return {"column": self.column, "expected": self.expected, "observed": self.observed,
                "pass": self.ok}


@dataclass
class EntryReport:
    entry: CatalogEntry
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, column: str, expected, observed):
        self.checks.append(Check(column, expected, observed))

    def to_dict(self) -> dict:
        return {
            "entry": self.entry.name,
            "pass": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "printed_differences": dict(self.entry.printed),
        }


def classify_name(P: LatticePolytope) -> str | None:
    r = classify(P)
    return r.name if r else None


def facet_classes(P: LatticePolytope) -> list[str | None]:
    """Canonical class names of all facets of ``P``."""
    return [classify_name(face_subpolytope(P, F)) for F in P.face_lattice.faces[P.dim - 1]]


def verify_entry(e: CatalogEntry, *, duals: bool = True) -> EntryReport:
    rep = EntryReport(e)
    P = build(e)
    reg = regularity_report(P)
    rep.add("regular", True, reg.regular)
    G = isom_group(P)
    flags_n = flag_count(P)
    rep.add("isom_equals_flags", True, G.order == flags_n)
    rep.add("isom_order", e.isom_order, G.order)
    rep.add("card", e.card, lattice_point_count(P))
    edges = edge_point_counts(P)
    rep.add("edges", {e.edge_points: sum(edges.values())}, dict(edges))
    rep.add("type", e.type_label, extract_roots(P).label)
    facets = sorted(set(facet_classes(P)), key=str)
    rep.add("facet", [e.facet], facets)
    if duals:
        V = vee_dual(P)
        S = star_dual(P)
        rep.add("vee_dual", canonical_label(e.vee_dual), classify_name(V))
        rep.add("star_dual", canonical_label(e.star_dual), classify_name(S))
        rep.add("vee_involution", True, normalize(vee_dual(V))[0] == P)
        rep.add("star_involution", True, star_dual(S) == P)
    return rep


def reference_card(e: CatalogEntry) -> int:
    """The lattice-point count as listed in the reference classification table."""
    return e.printed_value("card")


__all__ = [
    "ALIASES_2D",
    "CatalogEntry",
    "ClassificationResult",
    "EntryReport",
    "NonexistenceReport",
    "build",
    "canonical_label",
    "check_exclusion",
    "classify",
    "demicube",
    "e_root_polytope",
    "entry",
    "facet_classes",
    "parse_label",
    "simplex_count",
    "table",
    "verify_entry",
]
