import itertools

import pytest

from oracles import in_hull_caratheodory
from reglat.audit import MAX_BOUND, audit2d, convex_polygons
from reglat.errors import BudgetExceededError
from reglat.intlat import rank


def _convex_subsets(bound):
    """Point sets in the box that are exactly the vertex sets of convex polygons."""
    pts = list(itertools.product(range(-bound, bound + 1), repeat=2))
    out = set()
    for k in range(3, len(pts) + 1):
        for S in itertools.combinations(pts, k):
            if rank([(p[0] - S[0][0], p[1] - S[0][1]) for p in S[1:]]) < 2:
                continue
            if any(in_hull_caratheodory(p, [q for q in S if q != p]) for p in S):
                continue
            out.add(frozenset(S))
    return out


def test_enumeration_matches_subset_oracle():
    found = [frozenset(p) for p in convex_polygons(1, equal_edges=False)]
    assert len(found) == len(set(found))
    assert set(found) == _convex_subsets(1)


def test_polygons_are_counterclockwise_and_start_lowest():
    for poly in convex_polygons(2):
        assert poly[0] == min(poly)
        area2 = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(poly, poly[1:] + poly[:1]))
        assert area2 > 0


def test_bound_one():
    rep = audit2d(1)
    assert rep.ok and not rep.unexpected
    # the centred square with vertices (+-1, +-1) is C2^2 in Z^2
    assert rep.per_class["C2^2"] >= 1
    assert set(rep.per_class) <= {"S1^2", "S3^2", "C1^2", "C2^2", "H1^2", "H2^2"}


def test_bound_two_finds_every_class():
    rep = audit2d(2)
    assert rep.ok
    assert set(rep.per_class) == {"S1^2", "S3^2", "C1^2", "C2^2", "H1^2", "H2^2"}
    assert rep.regular == sum(rep.per_class.values())


def test_budget():
    with pytest.raises(BudgetExceededError):
        audit2d(MAX_BOUND + 1)
    with pytest.raises(BudgetExceededError):
        audit2d(0)
