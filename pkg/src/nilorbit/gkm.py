"""GKM graphs of partial flag varieties and their equivariant cohomology.

The fixed points of the torus action on G/P_Lambda are the cosets
W/W_Lambda; each invariant two-sphere joins [w] to [w s_beta] for a root
beta outside the parabolic and carries the weight w.beta.  A cohomology
class is a tuple of polynomials, one per fixed point, such that every edge
label divides the difference of its endpoint values.  Degree by degree
this is a finite linear condition, solved exactly as the nullspace of a
sparse rational constraint matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import CapExceededError, InternalInvariantError
from .lie import (
    DEFAULT_CAP,
    RootSystem,
    Weight,
    WeylWord,
    apply_word,
    coset_representatives,
    inner_product,
    parabolic_base_weight,
    reflect,
)
from .poly import MultiPoly, divides_linear, monomial_basis, sparse_nullspace

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class GKMVertex:
    """A torus-fixed point: its coset id, minimal word, tag, and (when the
    parabolic comes from the highest root) the long root labelling it."""

    index: int
    word: WeylWord
    tag: Weight
    long_root: Weight | None = None


@dataclass(frozen=True)
class GKMEdge:
    """A directed edge [w] -> [w s_beta] with sign-normalized label w.beta."""

    v: int
    u: int
    beta: Weight
    label: Weight


class GKMGraph:
    """The labelled fixed-point graph of G/P_Lambda.

    ``edges`` holds one directed edge per (vertex, beta) pair, so every
    vertex has degree equal to the number of roots outside the parabolic.
    ``conditions`` is the deduplicated list of unordered divisibility
    constraints actually fed to the solver: the (v, u) and (u, v) versions
    of an edge impose the same condition up to the sign of the label.

    Instances are immutable after construction and safe to share.
    """

    def __init__(self, rs: RootSystem, lambda_set: frozenset[int],
                 vertices: tuple[GKMVertex, ...], edges: tuple[GKMEdge, ...],
                 conditions: tuple[tuple[int, int, Weight], ...],
                 length_counts: tuple[int, ...]):
        self.rs = rs
        self.lambda_set = lambda_set
        self.vertices = vertices
        self.edges = edges
        self.conditions = conditions
        self.length_counts = length_counts

    @property
    def rank(self) -> int:
        return self.rs.rank

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return (f"GKMGraph({self.rs.lie_type}, Lambda={sorted(self.lambda_set)}, "
                f"{len(self.vertices)} vertices, {len(self.edges)} edges)")


def roots_off_parabolic(rs: RootSystem, lambda_set: frozenset[int]) -> list[Weight]:
    """Negative roots not supported on Lambda, i.e. Delta minus Delta_P.

    The parabolic's root set is all positive roots together with the
    negative roots whose support lies inside Lambda.
    """
    out = []
    for beta in rs.negative_roots:
        support = {i + 1 for i, c in enumerate(beta.coords) if c}
        if not support <= lambda_set:
            out.append(beta)
    out.sort(key=Weight.sort_key)
    return out


def build_gkm_graph(rs: RootSystem, lambda_set: frozenset[int],
                    cap: int = DEFAULT_CAP) -> GKMGraph:
    """Construct the GKM graph of G/P_Lambda.

    >>> from .lie import LieType, build_root_system
    >>> rs = build_root_system(LieType("B", 2))
    >>> g = build_gkm_graph(rs, rs.xi)
    >>> len(g.vertices), len(g.edges), len(g.conditions)
    (4, 12, 6)
    """
    lambda_set = frozenset(lambda_set)
    cosets = coset_representatives(rs, lambda_set, cap=cap)
    index_of_tag = {c.tag: c.index for c in cosets}
    off = roots_off_parabolic(rs, lambda_set)
    base = parabolic_base_weight(rs, lambda_set)
    reflected_base = {beta: reflect(rs, base, beta) for beta in off}

    tag_long = lambda_set == rs.xi
    vertices = tuple(
        GKMVertex(index=c.index, word=c.word, tag=c.tag,
                  long_root=apply_word(rs, c.word, rs.highest_root) if tag_long else None)
        for c in cosets)

    edges = []
    conditions = set()
    for c in cosets:
        for beta in off:
            target_tag = apply_word(rs, c.word, reflected_base[beta])
            u = index_of_tag.get(target_tag)
            if u is None:
                raise InternalInvariantError(
                    f"edge endpoint tag {target_tag!r} not among coset tags")
            if u == c.index:
                raise InternalInvariantError(
                    f"self-loop at coset {c.index} for root {beta!r}")
            label = apply_word(rs, c.word, beta).sign_normalized()
            edges.append(GKMEdge(v=c.index, u=u, beta=beta, label=label))
            key = (c.index, u) if c.index < u else (u, c.index)
            conditions.add((key[0], key[1], label))

    length_counts: list[int] = []
    for c in cosets:
        while len(length_counts) <= c.length:
            length_counts.append(0)
        length_counts[c.length] += 1

    return GKMGraph(
        rs=rs,
        lambda_set=lambda_set,
        vertices=vertices,
        edges=tuple(edges),
        conditions=tuple(sorted(conditions, key=lambda t: (t[0], t[1], t[2].sort_key()))),
        length_counts=tuple(length_counts),
    )


@dataclass(frozen=True)
class GKMClass:
    """A piecewise polynomial on a GKM graph: one homogeneous polynomial of
    degree d per vertex, forming a class of cohomological degree 2d."""

    graph: GKMGraph
    degree: int
    values: tuple[MultiPoly, ...]

    def __mul__(self, other):
        if isinstance(other, GKMClass):
            return pointwise_product(self, other)
        return GKMClass(self.graph, self.degree,
                        tuple(v * other for v in self.values))

    __rmul__ = __mul__

    def __add__(self, other: "GKMClass") -> "GKMClass":
        _check_same_graph(self, other)
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degrees")
        return GKMClass(self.graph, self.degree,
                        tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        return self + (-1) * other


def ones_class(graph: GKMGraph) -> GKMClass:
    one = MultiPoly.constant(graph.rank, 1)
    return GKMClass(graph, 0, (one,) * len(graph))


def _check_same_graph(a: GKMClass, b: GKMClass) -> None:
    if a.graph is b.graph:
        return
    ga, gb = a.graph, b.graph
    if (ga.rs.lie_type, ga.lambda_set) != (gb.rs.lie_type, gb.lambda_set):
        raise ValueError("classes live on different GKM graphs")


def pointwise_product(a: GKMClass, b: GKMClass) -> GKMClass:
    """Vertexwise product; the edge conditions are closed under it."""
    _check_same_graph(a, b)
    return GKMClass(a.graph, a.degree + b.degree,
                    tuple(x * y for x, y in zip(a.values, b.values)))


def satisfies_gkm_conditions(cls: GKMClass) -> bool:
    """Check every edge divisibility constraint exactly."""
    values = cls.values
    for v, u, label in cls.graph.conditions:
        form = MultiPoly.linear_form(label.coords)
        if not divides_linear(form, values[v] - values[u]):
            return False
    return True


@lru_cache(maxsize=None)
def _restriction_columns(label_coords: tuple[Fraction, ...], degree: int):
    """Restriction of Sym^degree to the hyperplane where the label vanishes.

    Returns (row_count, columns) where columns[k] maps row index ->
    coefficient: the image of the k-th graded-lex monomial after
    substituting the pivot variable (first nonzero label coordinate) by the
    solved hyperplane expression.
    """
    n = len(label_coords)
    pivot = next(i for i, c in enumerate(label_coords) if c)
    subst = {
        tuple(int(j == i) for j in range(n)): Fraction(-c, 1) / label_coords[pivot]
        for i, c in enumerate(label_coords) if c and i != pivot
    }
    powers = [{(0,) * n: Fraction(1)}]
    for _ in range(degree):
        prev, nxt = powers[-1], {}
        for e1, c1 in prev.items():
            for e2, c2 in subst.items():
                expo = tuple(x + y for x, y in zip(e1, e2))
                nxt[expo] = nxt.get(expo, Fraction(0)) + c1 * c2
        powers.append({e: v for e, v in nxt.items() if v})

    mons = monomial_basis(n, degree)
    row_index: dict[tuple[int, ...], int] = {}
    for m in mons:
        if m[pivot] == 0:
            row_index[m] = len(row_index)
    columns = []
    for m in mons:
        rest = tuple(0 if i == pivot else e for i, e in enumerate(m))
        col: dict[int, Fraction] = {}
        for e2, c2 in powers[m[pivot]].items():
            combined = tuple(x + y for x, y in zip(rest, e2))
            row = row_index[combined]
            new = col.get(row, Fraction(0)) + c2
            if new:
                col[row] = new
            else:
                del col[row]
        columns.append(col)
    return len(row_index), columns


def equivariant_basis(graph: GKMGraph, degree: int,
                      cap: int = DEFAULT_CAP) -> list[GKMClass]:
    """Exact basis of the degree-``degree`` equivariant cohomology of the graph.

    The unknowns are one coefficient per (vertex, monomial) pair; each edge
    contributes the equations forcing the difference of its endpoint
    polynomials to vanish on the label's hyperplane.  Odd degrees are empty.
    """
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    if degree % 2:
        return []
    d = degree // 2
    r = graph.rank
    mons = monomial_basis(r, d)
    width = len(mons)
    total = width * len(graph)
    if total > cap:
        raise CapExceededError(
            f"{total} unknowns in degree {degree} exceeds cap of {cap}")

    rows: list[dict[int, Fraction]] = []
    for v, u, label in graph.conditions:
        nrows, columns = _restriction_columns(label.coords, d)
        block: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
        for k, col in enumerate(columns):
            for row, coeff in col.items():
                block[row][v * width + k] = coeff
                block[row][u * width + k] = -coeff
        rows.extend(b for b in block if b)

    basis_vectors = sparse_nullspace(rows, total)
    return [vector_to_class(graph, degree, vec) for vec in basis_vectors]


def class_to_vector(cls: GKMClass) -> Vector:
    """Flatten to coefficients in (vertex-major, graded-lex) order."""
    mons = monomial_basis(cls.graph.rank, cls.degree // 2)
    out: list[Fraction] = []
    for value in cls.values:
        out.extend(value.coefficient(m) for m in mons)
    return tuple(out)


def vector_to_class(graph: GKMGraph, degree: int, vec: Vector) -> GKMClass:
    mons = monomial_basis(graph.rank, degree // 2)
    width = len(mons)
    values = []
    for v in range(len(graph)):
        chunk = vec[v * width:(v + 1) * width]
        values.append(MultiPoly(graph.rank, dict(zip(mons, chunk))))
    return GKMClass(graph, degree, tuple(values))


def predicted_equiv_betti(graph: GKMGraph, d: int) -> int:
    """Counting oracle for dim of degree-2d classes, independent of the solver.

    Freeness over the polynomial ring on rank generators gives
    sum_j b_{2j} * dim Sym^{d-j}, with b from the coset length counts.
    """
    r = graph.rank
    return sum(b * comb(d - j + r - 1, r - 1)
               for j, b in enumerate(graph.length_counts) if j <= d)
