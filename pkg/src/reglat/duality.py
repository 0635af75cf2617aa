"""Polar (*) and facet-barycenter (vee) duals of centered lattice polytopes.

The *-dual of ``P`` in the lattice ``L`` lives in ``Hom(L, Z)``, realised
concretely in the dual coordinates of the standard pairing, i.e. as the
lattice spanned by the rows of ``B^-T``.  Facet normals stored in lattice
coordinates are exactly coordinates with respect to that dual basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import InconsistentScaleError, NotCenteredError
from .intlat import content, denominator_lcm, transpose, vec_mat
from .polytope import LatticePolytope, dual_barycenters, hull, is_centered, normalize


def star_dual(P: LatticePolytope) -> LatticePolytope:
    """The primitive polytope positively proportional to ``{phi : phi >= -1 on P}``.

    The polar's vertices are ``-a/b`` for the facets ``a.x <= b``.  They are
    brought into the dual lattice by the lcm of the offsets and divided by
    the gcd of all coordinates.  The result is not re-centered, so that
    applying the operation twice returns a primitive centered ``P`` itself.
    """
    if not is_centered(P):
        raise NotCenteredError("the *-dual needs the barycenter at the origin")
    if any(f.offset <= 0 for f in P.facets):
        raise NotCenteredError("the origin is not interior")
    m = lcm(*(f.offset for f in P.facets))
    pts = [tuple(-(m // f.offset) * a for a in f.normal) for f in P.facets]
    g = content(x for p in pts for x in p)
    pts = [tuple(x // g for x in p) for p in pts]
    Ld = P.lattice.dual()
    dual_basis = transpose(P.lattice.inverse_basis)
    amb = [vec_mat(p, dual_basis) for p in pts]
    return hull(amb, Ld, dual=not P.dual)


def vee_scales(P: LatticePolytope) -> list[Fraction]:
    """For each facet, the factor making its vertex barycenter primitive in the lattice."""
    out = []
    for b in dual_barycenters(P):
        den = denominator_lcm(b)
        out.append(Fraction(den, content(int(x * den) for x in b)))
    return out


def vee_dual(P: LatticePolytope) -> LatticePolytope:
    """Hull of the primitive lattice vectors on the rays through the facet barycenters.

    Requires one common scale for all facets, which regularity guarantees.
    """
    if not is_centered(P):
        raise NotCenteredError("the vee-dual needs the barycenter at the origin")
    ks = vee_scales(P)
    if len(set(ks)) != 1:
        raise InconsistentScaleError(f"facet barycenters need different scales: {sorted(set(ks))}")
    k = ks[0]
    bs = dual_barycenters(P)
    pts = [P.lattice.point(tuple(k * x for x in b)) for b in bs]
    Q = hull(pts, P.lattice, dual=P.dual)
    return normalize(Q)[0]
