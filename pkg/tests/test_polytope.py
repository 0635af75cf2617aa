import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_unimodular
from oracles import brute_count, in_hull_caratheodory
from reglat.errors import DegenerateError, NotLatticePointError
from reglat.intlat import Lattice, rank
from reglat.polytope import (
    LatticePolytope,
    barycenter,
    edge_point_count,
    edge_point_counts,
    face_lattice,
    face_subpolytope,
    flag_count,
    flags,
    hull,
    is_centered,
    is_primitive,
    lattice_point_count,
    normalize,
    scale,
    transform,
    translate,
)
from reglat.rootsys import standard_root_system, weyl_group, weyl_orbit

Z2 = Lattice.standard(2)
Z3 = Lattice.standard(3)
SQUARE = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
CUBE = [(a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]


def hexagon():
    R = standard_root_system([("A", 2)])
    return hull(weyl_orbit(weyl_group(R), (1, 1)), R.lattice)


def cell24():
    R = standard_root_system([("D", 4)])
    return hull(R.roots, Lattice(R.cartan))


def test_hull_square():
    P = hull(SQUARE, Z2)
    assert P.n_vertices == 4 and len(P.facets) == 4


def test_hull_drops_interior_points():
    assert hull(SQUARE + [(0, 0), (1, 0)], Z2) == hull(SQUARE, Z2)


def test_hull_hexagon_by_direct_inequality_check():
    P = hexagon()
    assert P.n_vertices == 6 and len(P.facets) == 6
    for f in P.facets:
        vals = [sum(a * x for a, x in zip(f.normal, c)) for c in P.coords]
        assert max(vals) == f.offset and vals.count(f.offset) == 2


def test_hull_errors():
    with pytest.raises(DegenerateError):
        hull([(0, 0), (1, 1), (2, 2)], Z2)
    with pytest.raises(NotLatticePointError):
        hull([(0, 0), (1, 0), (0, 1)], Lattice([[2, 0], [0, 2]]))


def test_face_lattice_examples():
    assert face_lattice(hull(SQUARE, Z2)).f_vector == (4, 4)
    assert face_lattice(hull(CUBE, Z3)).f_vector == (8, 12, 6)
    fv = face_lattice(cell24()).f_vector
    assert fv[0] == 24 and fv[3] == 24


def test_flags_examples():
    assert len(flags(hull(SQUARE, Z2))) == 8
    assert len(flags(hull(CUBE, Z3))) == 48
    assert len(flags(hexagon())) == 12


@pytest.mark.parametrize("pts", [SQUARE, CUBE, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]])
def test_flag_count_two_ways(pts):
    P = hull(pts, Lattice.standard(len(pts[0])))
    assert flag_count(P) == len(flags(P))


def test_barycenter():
    assert barycenter(hull(SQUARE, Z2)) == (0, 0)
    assert barycenter(hull([(0, 0), (1, 0), (0, 1)], Z2)) == (Fraction(1, 3), Fraction(1, 3))
    assert barycenter(hexagon()) == (0, 0)


def test_normalize_examples():
    P = hull(SQUARE, Z2)
    Q, w = normalize(P)
    assert Q == P and w.is_identity
    S = hull([(0, 0), (2, 0), (0, 2), (2, 2)], Z2)
    Q, w = normalize(S)
    assert Q == P
    assert {w(v) for v in S.vertices} == set(Q.vertices)
    H = hexagon()
    H3 = scale(H, 3)
    Q, w = normalize(H3)
    assert Q == H and w.homothety_ratio == Fraction(1, 3)


def test_centered_primitive():
    P = hull(SQUARE, Z2)
    assert is_centered(P) and is_primitive(P)
    assert not is_primitive(hull([(2 * a, 2 * b) for a, b in SQUARE], Z2))
    # cube with vertices sum of +-2 w_i in 2Z^n: coordinates +-1 in the lattice basis
    C1 = hull([(2 * a, 2 * b, 2 * c) for a, b, c in CUBE], Lattice([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))
    assert is_primitive(C1)


def test_lattice_point_count_examples():
    C1 = hull([(2 * a, 2 * b, 2 * c) for a, b, c in CUBE], Lattice([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))
    assert lattice_point_count(C1) == 27
    assert lattice_point_count(hexagon()) == 13
    assert lattice_point_count(cell24()) == 25


def test_edge_point_count_examples():
    assert edge_point_count(hull(CUBE, Z3)) == 3
    assert edge_point_counts(hull(CUBE, Lattice([[2, 0, 0], [0, 2, 0], [1, 1, 1]]))) == {2: 12}


def test_face_subpolytope():
    C = hull(CUBE, Z3)
    for F in C.face_lattice.faces[2]:
        S = face_subpolytope(C, F)
        assert S.dim == 2 and S.n_vertices == 4
        assert normalize(S)[0] == hull(SQUARE, Z2)
    for e in C.face_lattice.faces[1]:
        S = face_subpolytope(C, e)
        assert S.dim == 1 and lattice_point_count(S) == 3


def test_serialization_round_trip():
    P = cell24()
    assert LatticePolytope.from_dict(P.to_dict()) == P


points2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=7)
points3 = st.lists(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=4, max_size=8
)


def _maybe_hull(pts, n):
    base = pts[0]
    if rank([[a - b for a, b in zip(p, base)] for p in pts]) < n:
        return None
    return hull(pts, Lattice.standard(n))


@given(points2)
def test_point_count_matches_oracle_2d(pts):
    P = _maybe_hull(pts, 2)
    if P is None:
        return
    assert lattice_point_count(P) == brute_count(P)
    # the stored vertices are exactly the extreme points
    for i, v in enumerate(P.coords):
        others = [w for j, w in enumerate(P.coords) if j != i]
        assert not in_hull_caratheodory(v, others)


@given(points3)
def test_invariants_3d(pts):
    P = _maybe_hull(pts, 3)
    if P is None:
        return
    assert hull(P.vertices, P.lattice) == P
    for f in P.facets:
        tight = [P.coords[i] for i in f.vertices]
        assert rank([[a - b for a, b in zip(t, tight[0])] for t in tight[1:]]) == 2
        assert all(sum(a * x for a, x in zip(f.normal, c)) <= f.offset for c in P.coords)
    assert flag_count(P) == len(flags(P))
    Q, _ = normalize(P)
    Q2, w2 = normalize(Q)
    assert Q2 == Q and w2.is_identity
    assert lattice_point_count(P) == brute_count(P)


@pytest.mark.parametrize("seed", range(5))
def test_point_count_unimodular_invariance(seed):
    rng = random.Random(seed)
    P = cell24()
    g = random_unimodular(rng, 4)
    Q = transform(P, g)
    assert lattice_point_count(Q) == 25
    T = translate(hull(CUBE, Z3), (1, -2, 3))
    assert lattice_point_count(T) == 27
