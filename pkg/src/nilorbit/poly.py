"""Exact multivariate polynomials over Q and exact rational linear algebra.

Everything here is exact: coefficients are ``fractions.Fraction`` and no
floating point enters at any stage.  Polynomials are sparse term maps
(exponent tuple -> nonzero coefficient); linear algebra uses dense vectors
indexed by :func:`monomial_basis` but eliminates sparsely, which is what
makes the larger constraint systems tractable in pure Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import RankMismatchError

Vector = tuple[Fraction, ...]


class MultiPoly:
    """A sparse polynomial in ``num_vars`` variables with rational coefficients.

    The term map is kept canonical (no zero coefficients), so equality is
    plain term-map equality and the zero polynomial has an empty map.

    >>> x = MultiPoly.variable(2, 0)
    >>> y = MultiPoly.variable(2, 1)
    >>> (x - y) * (x + y) == x * x - y * y
    True
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple[int, ...], Rational] | None = None):
        if num_vars < 0:
            raise ValueError(f"num_vars must be nonnegative, got {num_vars}")
        self.num_vars = num_vars
        canon: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in (terms or {}).items():
            expo = tuple(expo)
            if len(expo) != num_vars:
                raise ValueError(f"exponent {expo} has length {len(expo)}, expected {num_vars}")
            c = Fraction(coeff)
            if c:
                canon[expo] = c
        self.terms = canon

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: Rational) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MultiPoly":
        expo = tuple(int(i == index) for i in range(num_vars))
        return cls(num_vars, {expo: 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Rational]) -> "MultiPoly":
        """The linear polynomial sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        return cls(n, {
            tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs) if c
        })

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, expo: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        return poly_add(self, other)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return poly_add(self, poly_scale(other, -1))

    def __neg__(self) -> "MultiPoly":
        return poly_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return poly_mul(self, other)
        return poly_scale(self, other)

    def __rmul__(self, other):
        return poly_scale(self, other)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Render in graded-lex order, e.g. ``'2*x1^2 - 1/3*x1*x2'``."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.num_vars)]
        # graded-lex: higher total degree first, then lexicographically larger
        ordered = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        pieces = []
        for expo in ordered:
            coeff = self.terms[expo]
            vars_part = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(expo) if e
            )
            mag = abs(coeff)
            if not vars_part:
                body = str(mag)
            elif mag == 1:
                body = vars_part
            else:
                body = f"{mag}*{vars_part}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self.num_vars}, {self.to_string()!r})"


def _check_vars(a: MultiPoly, b: MultiPoly) -> None:
    if a.num_vars != b.num_vars:
        raise RankMismatchError(
            f"polynomials have {a.num_vars} and {b.num_vars} variables")


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    _check_vars(a, b)
    terms = dict(a.terms)
    for expo, coeff in b.terms.items():
        new = terms.get(expo, Fraction(0)) + coeff
        if new:
            terms[expo] = new
        else:
            terms.pop(expo, None)
    out = MultiPoly.zero(a.num_vars)
    out.terms = terms
    return out


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    _check_vars(a, b)
    terms: dict[tuple[int, ...], Fraction] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            expo = tuple(x + y for x, y in zip(e1, e2))
            new = terms.get(expo, Fraction(0)) + c1 * c2
            if new:
                terms[expo] = new
            else:
                terms.pop(expo, None)
    out = MultiPoly.zero(a.num_vars)
    out.terms = terms
    return out


def poly_scale(a: MultiPoly, c: Rational) -> MultiPoly:
    c = Fraction(c)
    out = MultiPoly.zero(a.num_vars)
    if c:
        out.terms = {e: v * c for e, v in a.terms.items()}
    return out


def divides_linear(linear: MultiPoly, f: MultiPoly) -> bool:
    """Whether the nonzero linear form ``linear`` divides ``f``.

    Equivalent to ``f`` vanishing on the hyperplane ``linear = 0``: the
    pivot variable (smallest index with nonzero coefficient) is substituted
    by the rest of the form and the result compared with zero.

    >>> x, y = (MultiPoly.variable(2, i) for i in (0, 1))
    >>> divides_linear(x - y, x * x - y * y)
    True
    >>> divides_linear(x, y)
    False
    """
    if linear.is_zero() or not linear.is_homogeneous(1):
        raise ValueError("divisor must be a nonzero homogeneous linear form")
    _check_vars(linear, f)
    n = f.num_vars
    coeffs = [Fraction(0)] * n
    for expo, c in linear.terms.items():
        coeffs[expo.index(1)] = c
    pivot = next(i for i, c in enumerate(coeffs) if c)
    # x_pivot on the hyperplane equals -(sum of the other terms)/c_pivot
    subst = {
        tuple(int(j == i) for j in range(n)): -c / coeffs[pivot]
        for i, c in enumerate(coeffs) if i != pivot and c
    }
    max_power = max((e[pivot] for e in f.terms), default=0)
    powers = [{(0,) * n: Fraction(1)}]
    for _ in range(max_power):
        prev, nxt = powers[-1], {}
        for e1, c1 in prev.items():
            for e2, c2 in subst.items():
                expo = tuple(x + y for x, y in zip(e1, e2))
                nxt[expo] = nxt.get(expo, Fraction(0)) + c1 * c2
        powers.append({e: v for e, v in nxt.items() if v})
    acc: dict[tuple[int, ...], Fraction] = {}
    for expo, c in f.terms.items():
        k = expo[pivot]
        rest = tuple(0 if i == pivot else e for i, e in enumerate(expo))
        for e2, c2 in powers[k].items():
            combined = tuple(x + y for x, y in zip(rest, e2))
            new = acc.get(combined, Fraction(0)) + c * c2
            if new:
                acc[combined] = new
            else:
                acc.pop(combined, None)
    return not acc


def monomial_basis(num_vars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``degree``, graded-lex descending.

    >>> monomial_basis(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    >>> len(monomial_basis(3, 2)) == comb(4, 2)
    True
    """
    if num_vars < 1 or degree < 0:
        raise ValueError(f"need num_vars >= 1 and degree >= 0, got {num_vars}, {degree}")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, pos: int) -> None:
        if pos == num_vars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, pos + 1)

    rec([], degree, 0)
    return out


@dataclass(frozen=True)
class RationalMatrix:
    """A dense matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Rational]]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        return cls(len(data), ncols, data)


class RationalSpan:
    """Incrementally maintained row space in reduced echelon form.

    Feeding vectors one at a time answers "did this enlarge the span?",
    which is all the rank, membership, and complement computations need.
    """

    def __init__(self):
        self._pivot_rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def _reduce(self, vec) -> dict[int, Fraction]:
        if isinstance(vec, dict):
            row = {c: Fraction(v) for c, v in vec.items() if v}
        else:
            row = {c: Fraction(v) for c, v in enumerate(vec) if v}
        while True:
            hit = next((c for c in row if c in self._pivot_rows), None)
            if hit is None:
                return row
            factor = row[hit]
            for c, v in self._pivot_rows[hit].items():
                new = row.get(c, Fraction(0)) - factor * v
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)

    def contains(self, vec) -> bool:
        return not self._reduce(vec)

    def add(self, vec) -> bool:
        """Insert a vector; True iff it was independent of the current span."""
        row = self._reduce(vec)
        if not row:
            return False
        pivot = min(row)
        inv = row[pivot]
        row = {c: v / inv for c, v in row.items()}
        for other in self._pivot_rows.values():
            if pivot in other:
                factor = other[pivot]
                for c, v in row.items():
                    new = other.get(c, Fraction(0)) - factor * v
                    if new:
                        other[c] = new
                    else:
                        other.pop(c, None)
        self._pivot_rows[pivot] = row
        return True

    def pivot_columns(self) -> list[int]:
        return sorted(self._pivot_rows)

    def nullspace_basis(self, ncols: int) -> list[Vector]:
        """Basis of the solution set, one vector per non-pivot column."""
        basis = []
        for free in range(ncols):
            if free in self._pivot_rows:
                continue
            vec = [Fraction(0)] * ncols
            vec[free] = Fraction(1)
            for pivot, row in self._pivot_rows.items():
                if free in row:
                    vec[pivot] = -row[free]
            basis.append(tuple(vec))
        return basis


def sparse_nullspace(rows: Iterable[Mapping[int, Rational]], ncols: int) -> list[Vector]:
    """Nullspace basis of a matrix given as sparse rows (col -> coefficient)."""
    span = RationalSpan()
    for row in rows:
        span.add(row)
    return span.nullspace_basis(ncols)


def nullspace(matrix: RationalMatrix) -> list[Vector]:
    """Exact basis of {v : Mv = 0}.

    >>> nullspace(RationalMatrix.from_rows([[1, 1]]))
    [(Fraction(-1, 1), Fraction(1, 1))]
    >>> nullspace(RationalMatrix.from_rows([[1, 0], [0, 1]]))
    []
    """
    rows = ({j: v for j, v in enumerate(row) if v} for row in matrix.entries)
    return sparse_nullspace(rows, matrix.cols)


def rank(matrix: RationalMatrix) -> int:
    span = RationalSpan()
    for row in matrix.entries:
        span.add(row)
    return span.rank


def column_space_complement(span: Sequence[Vector], inside: Sequence[Vector]) -> list[Vector]:
    """Vectors from ``inside`` whose classes form a basis modulo span(span).

    Requires span(span) to be contained in span(inside); a violation means
    some upstream injectivity assumption broke, so it is reported rather
    than silently absorbed.
    """
    tracker = RationalSpan()
    for v in inside:
        tracker.add(v)
    inside_rank = tracker.rank
    for v in span:
        if tracker.add(v):
            raise ValueError(
                "span is not contained in the candidate space; "
                "an upstream injectivity assumption is broken")
    modded = RationalSpan()
    for v in span:
        modded.add(v)
    chosen = [v for v in inside if modded.add(v)]
    if modded.rank != inside_rank:
        raise ValueError("dimension inconsistency while building complement")
    return chosen
