"""Fixed points of the projectivized orbit and the moment polytope."""

from fractions import Fraction
from itertools import combinations

import pytest

from nilorbit.errors import InternalInvariantError
from nilorbit.lie import LieType, build_root_system, coset_representatives, inner_product
from nilorbit.moment import certify_extremal, moment_polytope, projective_fixed_points


def _rs(family, rank):
    return build_root_system(LieType(family, rank))


# --- fixed points -----------------------------------------------------------

def test_a1_fixed_points():
    rs = _rs("A", 1)
    alpha = rs.simple_roots[0]
    assert set(projective_fixed_points(rs)) == {alpha, -alpha}


def test_g2_fixed_points_are_the_six_long_roots():
    rs = _rs("G", 2)
    points = projective_fixed_points(rs)
    assert len(points) == 6
    assert set(points) == rs.long_roots


def test_simply_laced_all_roots_fixed():
    # in type A every root is long, so all n(n+1) roots appear
    for n in (2, 3, 4):
        rs = _rs("A", n)
        points = projective_fixed_points(rs)
        assert len(points) == n * (n + 1)
        assert set(points) == rs.all_roots


def test_fixed_points_deterministic_order():
    rs = _rs("B", 3)
    assert projective_fixed_points(rs) == projective_fixed_points(rs)
    coords = [p.coords for p in projective_fixed_points(rs)]
    assert coords == sorted(coords)


# --- the polytope -----------------------------------------------------------

def test_a1_segment():
    poly = moment_polytope(_rs("A", 1))
    alpha = _rs("A", 1).simple_roots[0]
    assert set(poly.vertices) == {alpha, -alpha}


def test_g2_hexagon():
    rs = _rs("G", 2)
    poly = moment_polytope(rs)
    assert len(poly) == 6
    norms = {inner_product(rs, v, v) for v in poly.vertices}
    assert norms == {2}
    spectrum = {inner_product(rs, u, v)
                for u in poly.vertices for v in poly.vertices}
    assert spectrum == {2, 1, -1, -2}


def test_b2_square():
    rs = _rs("B", 2)
    poly = moment_polytope(rs)
    assert len(poly) == 4
    for v in poly.vertices:
        others = [u for u in poly.vertices if u != v]
        pairings = sorted(inner_product(rs, v, u) for u in others)
        assert pairings == [-2, 0, 0]  # one antipode, two orthogonal neighbours


def test_vertices_closed_under_negation():
    for family, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4)]:
        poly = moment_polytope(_rs(family, rank))
        vertex_set = set(poly.vertices)
        assert vertex_set == {-v for v in vertex_set}


def test_vertex_count_matches_coset_count():
    for family, rank in [("A", 2), ("A", 3), ("B", 3), ("C", 3), ("G", 2), ("F", 4)]:
        rs = _rs(family, rank)
        poly = moment_polytope(rs)
        assert len(poly) == len(coset_representatives(rs, rs.xi))


def test_certification_rejects_interior_points():
    rs = _rs("B", 2)
    bogus = tuple(rs.long_roots) + (rs.highest_root * Fraction(1, 2),)
    with pytest.raises(InternalInvariantError):
        certify_extremal(rs, bogus)


# --- an independent convexity oracle ----------------------------------------

def _solve_affine(points, target, rank):
    """Coefficients expressing target as an affine combination, or None.

    Solves the exact linear system (coordinates plus the sum-to-one row)
    by Gaussian elimination; underdetermined systems are skipped, which is
    harmless for the Caratheodory search below.
    """
    k = len(points)
    rows = [[p.coords[i] for p in points] + [target.coords[i]] for i in range(rank)]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            return None  # affinely dependent subset; a smaller one covers it
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None  # inconsistent
    sol = [Fraction(0)] * k
    for row_idx, c in enumerate(pivots):
        sol[c] = rows[row_idx][-1]
    return sol


def _in_convex_hull(rs, target, others):
    rank = rs.rank
    for size in range(1, rank + 2):
        for subset in combinations(others, size):
            sol = _solve_affine(subset, target, rank)
            if sol is not None and all(t >= 0 for t in sol):
                return True
    return False


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_certificate_against_caratheodory_search(family, rank):
    rs = _rs(family, rank)
    poly = moment_polytope(rs)  # certification must already pass
    for v in poly.vertices:
        others = [u for u in poly.vertices if u != v]
        assert not _in_convex_hull(rs, v, others)
    # sanity of the oracle itself: midpoints and the origin are inside
    assert _in_convex_hull(rs, Fraction(0) * rs.highest_root, list(poly.vertices))


def test_certification_scales_to_mid_rank():
    for family, rank in [("B", 4), ("D", 5), ("A", 5)]:
        assert moment_polytope(_rs(family, rank)).vertices
