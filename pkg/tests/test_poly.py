"""Exact polynomial arithmetic and rational linear algebra."""

import random
from fractions import Fraction
from math import comb

import pytest

from nilorbit.errors import RankMismatchError
from nilorbit.poly import (
    MultiPoly,
    RationalMatrix,
    RationalSpan,
    column_space_complement,
    divides_linear,
    monomial_basis,
    nullspace,
    poly_add,
    poly_mul,
    poly_scale,
)


def _vars(n):
    return [MultiPoly.variable(n, i) for i in range(n)]


def _random_poly(rng, num_vars, max_degree, max_terms=6):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, max_degree) for _ in range(num_vars))
        terms[expo] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultiPoly(num_vars, terms)


# --- ring arithmetic -------------------------------------------------------

def test_square_of_variable():
    x, = _vars(1)
    assert poly_mul(x, x) == MultiPoly(1, {(2,): 1})


def test_difference_of_squares():
    x, y = _vars(2)
    assert (x - y) * (x + y) == x * x - y * y


def test_zero_annihilates():
    x, y = _vars(2)
    zero = MultiPoly.zero(2)
    assert poly_mul(zero, x * y + x) == zero
    assert poly_mul(zero, x).terms == {}


def test_ring_axioms_on_random_samples():
    rng = random.Random(7)
    for _ in range(40):
        a = _random_poly(rng, 3, 3)
        b = _random_poly(rng, 3, 3)
        c = _random_poly(rng, 3, 3)
        assert poly_add(a, b) == poly_add(b, a)
        assert poly_mul(a, b) == poly_mul(b, a)
        assert poly_mul(a, poly_add(b, c)) == poly_add(poly_mul(a, b), poly_mul(a, c))
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))


def test_homogeneous_products_add_degrees():
    rng = random.Random(11)
    for _ in range(20):
        d1, d2 = rng.randint(0, 3), rng.randint(0, 3)
        a = MultiPoly(2, {e: rng.randint(1, 3) for e in monomial_basis(2, d1)})
        b = MultiPoly(2, {e: rng.randint(1, 3) for e in monomial_basis(2, d2)})
        product = poly_mul(a, b)
        assert product.is_homogeneous(d1 + d2)


def test_variable_count_mismatch():
    with pytest.raises(RankMismatchError):
        poly_add(MultiPoly.variable(2, 0), MultiPoly.variable(3, 0))


def test_scale():
    x, y = _vars(2)
    assert poly_scale(x + y, Fraction(1, 2)) == MultiPoly(
        2, {(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2)})
    assert poly_scale(x, 0).is_zero()


def test_canonical_independent_of_insertion_order():
    rng = random.Random(3)
    entries = [((2, 1), Fraction(3)), ((0, 0), Fraction(-1, 2)),
               ((1, 1), Fraction(5)), ((0, 3), Fraction(0))]
    reference = MultiPoly(2, dict(entries))
    for _ in range(10):
        shuffled = entries[:]
        rng.shuffle(shuffled)
        rebuilt = MultiPoly(2, dict(shuffled))
        assert rebuilt == reference
        assert rebuilt.to_string() == reference.to_string()
        assert (0, 3) not in rebuilt.terms


# --- divisibility by a linear form ----------------------------------------

def test_divides_linear_basic():
    x, y = _vars(2)
    assert divides_linear(x, x * x)
    assert not divides_linear(x, y)
    assert divides_linear(x - y, x * x - y * y)


def test_divides_linear_rejects_bad_divisors():
    x, y = _vars(2)
    with pytest.raises(ValueError):
        divides_linear(MultiPoly.zero(2), x)
    with pytest.raises(ValueError):
        divides_linear(x * x, x)
    with pytest.raises(ValueError):
        divides_linear(x + MultiPoly.constant(2, 1), x)


def _division_remainder(linear, f, var_order):
    """Long division of f by a linear form under a permuted lex order.

    Independent oracle: the remainder is zero exactly when the form divides
    f, whatever term order is used for a single-divisor division.
    """
    def order_key(expo):
        return tuple(expo[i] for i in var_order)

    lead = max(linear.terms, key=order_key)
    lead_coeff = linear.terms[lead]
    remainder = dict(f.terms)
    while True:
        target = None
        for expo in sorted(remainder, key=order_key, reverse=True):
            if all(a >= b for a, b in zip(expo, lead)):
                target = expo
                break
        if target is None:
            return remainder
        ratio = remainder[target] / lead_coeff
        shift = tuple(a - b for a, b in zip(target, lead))
        for expo2, c2 in linear.terms.items():
            expo = tuple(a + b for a, b in zip(shift, expo2))
            new = remainder.get(expo, Fraction(0)) - ratio * c2
            if new:
                remainder[expo] = new
            else:
                remainder.pop(expo, None)


def test_divides_linear_agrees_with_long_division():
    rng = random.Random(2024)
    for rank in range(1, 5):
        for _ in range(500):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(rank)]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(rank)] = Fraction(1)
            linear = MultiPoly.linear_form(coeffs)
            f = _random_poly(rng, rank, 3, max_terms=4)
            if rng.random() < 0.5:
                f = poly_mul(linear, f)  # force plenty of true cases
            order = list(range(rank))
            rng.shuffle(order)
            expected = not _division_remainder(linear, f, order)
            assert divides_linear(linear, f) == expected


# --- monomial bases --------------------------------------------------------

def test_monomial_basis_examples():
    assert monomial_basis(1, 3) == [(3,)]
    assert monomial_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(3, 2)) == 6


def test_monomial_basis_counts_and_order():
    for r in range(1, 5):
        for d in range(0, 6):
            mons = monomial_basis(r, d)
            assert len(mons) == comb(d + r - 1, r - 1)
            assert all(sum(m) == d for m in mons)
            assert mons == sorted(mons, reverse=True)
            assert len(set(mons)) == len(mons)


# --- nullspaces ------------------------------------------------------------

def test_nullspace_examples():
    identity = RationalMatrix.from_rows([[1, 0], [0, 1]])
    assert nullspace(identity) == []

    zero23 = RationalMatrix.from_rows([[0, 0, 0], [0, 0, 0]])
    basis = nullspace(zero23)
    assert len(basis) == 3

    line = nullspace(RationalMatrix.from_rows([[1, 1]]))
    assert len(line) == 1
    v = line[0]
    # spans the same line as (1, -1)
    assert v[0] * Fraction(-1) == v[1] * Fraction(1)
    assert any(v)


def test_nullspace_solves_and_counts():
    rng = random.Random(99)
    for _ in range(30):
        nrows = rng.randint(1, 7)
        ncols = rng.randint(1, 9)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                 for _ in range(ncols)] for _ in range(nrows)]
        matrix = RationalMatrix.from_rows(rows)
        basis = nullspace(matrix)
        span = RationalSpan()
        for row in matrix.entries:
            span.add(row)
        assert span.rank + len(basis) == ncols
        for v in basis:
            for row in matrix.entries:
                assert sum(a * b for a, b in zip(row, v)) == 0
        # basis vectors are independent
        check = RationalSpan()
        assert all(check.add(v) for v in basis)


# --- quotient complements --------------------------------------------------

def _e(i, n):
    return tuple(Fraction(int(j == i)) for j in range(n))


def test_complement_examples():
    e1, e2 = _e(0, 2), _e(1, 2)
    assert column_space_complement([], [e1, e2]) == [e1, e2]
    assert column_space_complement([e1, e2], [e1, e2]) == []
    assert column_space_complement([e1], [e1, e2]) == [e2]


def test_complement_respects_input_order():
    e1, e2 = _e(0, 2), _e(1, 2)
    diag = (Fraction(1), Fraction(1))
    # whichever independent candidate comes first is chosen
    assert column_space_complement([e1], [diag, e2]) == [diag]
    assert column_space_complement([e1], [e2, diag]) == [e2]


def test_complement_rejects_escaping_span():
    e1, e2, e3 = (_e(i, 3) for i in range(3))
    with pytest.raises(ValueError):
        column_space_complement([e3], [e1, e2])
