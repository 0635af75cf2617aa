import pytest

from reglat.catalog import build, classify, entry, table
from reglat.duality import star_dual, vee_dual, vee_scales
from reglat.errors import InconsistentScaleError, NotCenteredError
from reglat.intlat import Lattice
from reglat.polytope import hull, is_centered, is_primitive, normalize, translate
from reglat.symmetry import isom_group


def name(P):
    return classify(P).name


@pytest.mark.parametrize("n", [2, 3, 4])
def test_star_of_standard_cube_is_standard_cocube(n):
    P = build(entry("C1", n))
    S = star_dual(P)
    assert S.dual and S.n_vertices == 2 * n
    assert name(S) == ("C2^2" if n == 2 else f"CC2^{n}")


@pytest.mark.parametrize("n,d", [(2, 1), (2, 3), (3, 1), (3, 2), (3, 4), (5, 2), (5, 3)])
def test_star_of_simplex(n, d):
    assert name(star_dual(build(entry(f"S{d}", n)))) == f"S{(n + 1) // d}^{n}"


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (5, 3)])
def test_vee_of_simplex_is_same_class(n, d):
    P = build(entry(f"S{d}", n))
    V = vee_dual(P)
    assert name(V) == f"S{d}^{n}"
    # the facet barycenters of a centered simplex point at the opposite vertices
    assert set(V.vertices) == {tuple(-x for x in v) for v in P.vertices}


def test_vee_examples():
    assert name(vee_dual(build(entry("H1^2")))) == "H2^2"
    assert name(vee_dual(build(entry("H2^2")))) == "H1^2"
    assert name(vee_dual(build(entry("D1^4")))) == "D2^4"
    assert name(vee_dual(build(entry("C1^2")))) == "C2^2"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_involutions(n):
    for e in table(n):
        P = build(e)
        assert star_dual(star_dual(P)) == P
        assert normalize(vee_dual(vee_dual(P)))[0] == P


@pytest.mark.parametrize("label", ["C2^3", "CC3^3", "S2^3", "D2^4", "H1^2"])
def test_face_counts_reverse(label):
    P = build(entry(label))
    for D in (star_dual(P), vee_dual(P)):
        assert D.n_vertices == len(P.facets)
        assert len(D.facets) == P.n_vertices
        f = [len(level) for level in P.face_lattice.faces]
        g = [len(level) for level in D.face_lattice.faces]
        assert f == g[::-1]
        assert is_centered(D) and is_primitive(D)


@pytest.mark.parametrize("label", ["C3^3", "CC1^3", "S2^3", "H2^2"])
def test_duals_have_same_symmetry_order(label):
    P = build(entry(label))
    k = isom_group(P).order
    assert isom_group(star_dual(P)).order == k
    assert isom_group(vee_dual(P)).order == k


def test_star_dual_lattice_is_dual_lattice():
    P = build(entry("C2^3"))
    S = star_dual(P)
    assert S.lattice == P.lattice.dual()
    # every dual vertex pairs integrally with every lattice vector of P
    for u in S.vertices:
        for b in P.lattice.basis:
            assert sum(x * y for x, y in zip(u, b)).denominator == 1


def test_errors():
    C = build(entry("C1^2"))
    P = translate(C, C.lattice.basis[0])
    with pytest.raises(NotCenteredError):
        star_dual(P)
    with pytest.raises(NotCenteredError):
        vee_dual(P)
    # centered but not regular: the facet barycenters need different scales
    R = hull([(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)], Lattice.standard(2))
    assert is_centered(R)
    assert sorted(set(vee_scales(R))) == [1, 2]
    with pytest.raises(InconsistentScaleError):
        vee_dual(R)
