"""Equivariant cohomology of the minimal and regular nilpotent orbits.

The minimal orbit: its projectivization is the partial flag variety of the
parabolic attached to the simple roots orthogonal to the highest root, and
the orbit itself is the complement of the zero section in a line bundle
over it.  The Gysin sequence then presents the orbit's equivariant
cohomology as the flag variety's modulo the ideal generated by the
equivariant Euler class, whose value at the fixed point [w] is the linear
form w.alpha, i.e. exactly the long root labelling the vertex.

The regular orbit: its equivariant cohomology agrees with the ordinary
rational cohomology of the full flag variety, so its Betti numbers count
Weyl group elements by length.  Its cohomology equivariant with respect to
the whole group reduces to the group cohomology of the (finite) centre,
which we read off the Smith normal form of the Cartan matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, prod

from .errors import InternalInvariantError
from .gkm import (
    GKMClass,
    GKMGraph,
    build_gkm_graph,
    class_to_vector,
    equivariant_basis,
    pointwise_product,
)
from .lie import (
    DEFAULT_CAP,
    LieType,
    RootSystem,
    _orbit_levels,
    build_root_system,
    coset_poincare_polynomial,
    parabolic_base_weight,
)
from .poly import MultiPoly, column_space_complement


@dataclass(frozen=True)
class BettiTable:
    """Dimensions per cohomological degree; odd degrees are always zero."""

    max_degree: int
    dims: dict[int, int]

    def __getitem__(self, degree: int) -> int:
        if degree < 0 or degree > self.max_degree:
            raise KeyError(degree)
        return self.dims.get(degree, 0)

    def as_list(self) -> list[int]:
        """Dims in even degrees 0, 2, ..., max_degree."""
        return [self[d] for d in range(0, self.max_degree + 1, 2)]


@dataclass(frozen=True)
class DegreePiece:
    """One graded piece of a quotient presentation: the ambient basis, the
    ideal's image inside it, and chosen representatives of the quotient."""

    ambient: tuple[GKMClass, ...]
    image: tuple[GKMClass, ...]
    representatives: tuple[GKMClass, ...]

    @property
    def quotient_dimension(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class QuotientRing:
    """The equivariant cohomology of the minimal orbit, degree by degree, as
    a quotient of the flag variety's by the Euler-class ideal."""

    graph: GKMGraph
    euler: GKMClass
    degreewise: dict[int, DegreePiece]

    @property
    def max_degree(self) -> int:
        return max(self.degreewise)

    def betti(self) -> BettiTable:
        return BettiTable(self.max_degree,
                          {d: piece.quotient_dimension
                           for d, piece in self.degreewise.items()})


def euler_class(graph: GKMGraph) -> GKMClass:
    """The degree-2 class restricting to w.alpha at the vertex [w].

    Only defined on graphs built for the highest-root parabolic, where each
    vertex is tagged by a long root; the class's value there is that root
    read as a linear form.
    """
    if graph.lambda_set != graph.rs.xi:
        raise ValueError(
            f"Euler class needs the parabolic {sorted(graph.rs.xi)} attached to "
            f"the highest root, got {sorted(graph.lambda_set)}")
    values = []
    for vertex in graph.vertices:
        if vertex.long_root is None:
            raise InternalInvariantError("vertex missing its long-root tag")
        values.append(MultiPoly.linear_form(vertex.long_root.coords))
    return GKMClass(graph, 2, tuple(values))


def minimal_orbit_cohomology(rs: RootSystem, max_degree: int = 8,
                             cap: int = DEFAULT_CAP, jobs: int = 1) -> QuotientRing:
    """Present the minimal orbit's equivariant cohomology up to max_degree.

    In each even degree the ambient space is solved from the GKM
    conditions, the ideal's graded piece is the Euler class times the
    previous degree, and representatives are chosen deterministically from
    the ambient basis.  Multiplication by the Euler class must be
    injective; a rank drop would contradict it being a non zero-divisor
    and is reported as an internal error, never absorbed.

    Degrees are independent; ``jobs > 1`` solves them concurrently with an
    output identical to the sequential run.
    """
    if max_degree < 0 or max_degree % 2:
        raise ValueError(f"max_degree must be even and nonnegative, got {max_degree}")
    graph = build_gkm_graph(rs, rs.xi, cap=cap)
    euler = euler_class(graph)
    degrees = list(range(0, max_degree + 1, 2))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            solved = list(pool.map(
                lambda deg: equivariant_basis(graph, deg, cap=cap), degrees))
    else:
        solved = [equivariant_basis(graph, deg, cap=cap) for deg in degrees]
    bases = dict(zip(degrees, solved))
    degreewise: dict[int, DegreePiece] = {}
    previous: list[GKMClass] = []
    for degree in degrees:
        ambient = bases[degree]
        image = [pointwise_product(euler, b) for b in previous]
        ambient_vectors = [class_to_vector(c) for c in ambient]
        image_vectors = [class_to_vector(c) for c in image]
        try:
            reps = column_space_complement(image_vectors, ambient_vectors)
        except ValueError as exc:
            raise InternalInvariantError(
                f"degree {degree}: Euler multiples escaped the solution space "
                f"({exc})") from exc
        if len(reps) != len(ambient) - len(previous):
            raise InternalInvariantError(
                f"multiplication by the Euler class dropped rank in degree {degree}: "
                f"{len(ambient)} ambient, {len(previous)} multiplied in, "
                f"{len(reps)} representatives left")
        chosen = frozenset(reps)
        representatives = tuple(c for c, v in zip(ambient, ambient_vectors) if v in chosen)
        degreewise[degree] = DegreePiece(tuple(ambient), tuple(image), representatives)
        previous = ambient
    return QuotientRing(graph=graph, euler=euler, degreewise=degreewise)


def _equivariant_flag_betti(poincare: tuple[int, ...], rank: int, d: int) -> int:
    return sum(b * comb(d - j + rank - 1, rank - 1)
               for j, b in enumerate(poincare) if j <= d)


def minimal_orbit_betti(rs: RootSystem, max_degree: int = 8,
                        cap: int = DEFAULT_CAP) -> BettiTable:
    """Betti numbers of the minimal orbit from counting alone.

    Uses b(2d) = b_T(2d of the flag variety) - b_T(2d - 2), with the flag
    variety's equivariant Betti numbers read off the coset length
    generating function.  Entirely independent of the linear-algebra path.

    >>> rs = build_root_system(LieType("A", 1))
    >>> minimal_orbit_betti(rs, 6).as_list()
    [1, 1, 0, 0]
    """
    if max_degree < 0 or max_degree % 2:
        raise ValueError(f"max_degree must be even and nonnegative, got {max_degree}")
    poincare = coset_poincare_polynomial(rs, rs.xi, cap=cap)
    r = rs.rank
    dims = {}
    for degree in range(0, max_degree + 1, 2):
        d = degree // 2
        here = _equivariant_flag_betti(poincare, r, d)
        below = _equivariant_flag_betti(poincare, r, d - 1) if d else 0
        dims[degree] = here - below
    return BettiTable(max_degree, dims)


def regular_orbit_betti(rs: RootSystem, max_degree: int = 8,
                        cap: int = DEFAULT_CAP) -> BettiTable:
    """Betti numbers of the regular orbit: Weyl elements counted by length.

    The length census comes from a breadth-first walk over the orbit of a
    regular dominant weight, truncated at max_degree/2, so the full Weyl
    group is never enumerated.

    >>> rs = build_root_system(LieType("A", 2))
    >>> regular_orbit_betti(rs, 6).as_list()
    [1, 2, 2, 1]
    """
    if max_degree < 0 or max_degree % 2:
        raise ValueError(f"max_degree must be even and nonnegative, got {max_degree}")
    base = parabolic_base_weight(rs, frozenset())
    levels = _orbit_levels(rs, base, cap, max_depth=max_degree // 2)
    dims = {}
    for degree in range(0, max_degree + 1, 2):
        d = degree // 2
        dims[degree] = len(levels[d]) if d < len(levels) else 0
    return BettiTable(max_degree, dims)


# ---------------------------------------------------------------------------
# centre of the simply-connected group and its group cohomology


@dataclass(frozen=True)
class CenterGroup:
    """A finite abelian group in invariant-factor form (each divides the next).

    The empty tuple is the trivial group.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = self.invariant_factors
        if any(f <= 1 for f in factors):
            raise ValueError(f"invariant factors must exceed 1, got {factors}")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError(f"each factor must divide the next, got {factors}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{m}" for m in self.invariant_factors)


def smith_invariant_factors(matrix) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returned entries are nonnegative, each dividing the next, padded with
    zeros for any rank deficiency.
    """
    m = [[int(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    diag = []
    top = 0
    while top < min(nrows, ncols):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        pivot = m[top][top]
        dirty = False
        for i in range(top + 1, nrows):
            q = m[i][top] // pivot
            if q:
                for j in range(top, ncols):
                    m[i][j] -= q * m[top][j]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, ncols):
            q = m[top][j] // pivot
            if q:
                for i in range(top, nrows):
                    m[i][j] -= q * m[i][top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue
        # pivot must also divide every remaining entry for the factor chain
        offender = next(((i, j) for i in range(top + 1, nrows)
                         for j in range(top + 1, ncols) if m[i][j] % pivot), None)
        if offender is not None:
            i, _ = offender
            for j in range(top, ncols):
                m[top][j] += m[i][j]
            continue
        diag.append(abs(pivot))
        top += 1
    diag.extend([0] * (min(nrows, ncols) - len(diag)))
    return diag


def center_group(t: LieType) -> CenterGroup:
    """Centre of the simply-connected group: weight lattice over root lattice.

    In the fundamental-weight basis the simple roots' coordinate matrix is
    the Cartan matrix (either orientation; transposition does not change
    the Smith form), so the quotient lattice's invariant factors are the
    nontrivial Smith normal form entries.

    >>> center_group(LieType("A", 2))
    CenterGroup(invariant_factors=(3,))
    >>> str(center_group(LieType("E", 8)))
    'trivial'
    """
    rs = build_root_system(t)
    transposed = list(zip(*rs.cartan_matrix))
    diag = smith_invariant_factors(transposed)
    if any(x == 0 for x in diag):
        raise InternalInvariantError("Cartan matrix of a simple type is nonsingular")
    return CenterGroup(tuple(x for x in diag if x > 1))


@dataclass(frozen=True)
class AbelianGroup:
    """Descriptor of a finitely generated abelian group: free rank plus
    torsion in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{m}" for m in self.torsion]
        return " + ".join(parts) if parts else "0"


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factor_form(cyclic_orders) -> tuple[int, ...]:
    """Recombine arbitrary cyclic orders into the divisibility chain."""
    by_prime: dict[int, list[int]] = {}
    for n in cyclic_orders:
        for p, e in _factorize(n).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return ()
    depth = max(len(v) for v in by_prime.values())
    factors = []
    for slot in range(depth):
        f = 1
        for p, exps in by_prime.items():
            exps = sorted(exps, reverse=True)
            if slot < len(exps):
                f *= p ** exps[slot]
        factors.append(f)
    return tuple(sorted(factors))


def _tensor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    torsion = [gcd(x, y) for x in a.torsion for y in b.torsion]
    torsion += list(a.torsion) * b.free_rank
    torsion += list(b.torsion) * a.free_rank
    torsion = [t for t in torsion if t > 1]
    return AbelianGroup(a.free_rank * b.free_rank, _invariant_factor_form(torsion))


def _tor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    torsion = [gcd(x, y) for x in a.torsion for y in b.torsion]
    torsion = [t for t in torsion if t > 1]
    return AbelianGroup(0, _invariant_factor_form(torsion))


def _direct_sum(groups) -> AbelianGroup:
    free = sum(g.free_rank for g in groups)
    torsion = [t for g in groups for t in g.torsion]
    return AbelianGroup(free, _invariant_factor_form(torsion))


def _cyclic_cohomology(m: int, n: int) -> AbelianGroup:
    """Group cohomology of Z/m with integer coefficients: Z, 0, Z/m, 0, Z/m, ..."""
    if n == 0:
        return AbelianGroup(1, ())
    if n % 2 == 0:
        return AbelianGroup(0, (m,))
    return AbelianGroup(0, ())


def center_group_cohomology(c: CenterGroup, n: int) -> AbelianGroup:
    """Integer group cohomology of the centre in degree n.

    Cyclic centres follow the standard periodic pattern; a product of two
    cyclic factors is assembled with the Kuenneth formula for classifying
    spaces (tensor terms in degree n, torsion products in degree n + 1).
    Centres of simple types never have more than two factors.

    >>> str(center_group_cohomology(CenterGroup((2,)), 2))
    'Z/2'
    >>> str(center_group_cohomology(CenterGroup((2, 2)), 3))
    'Z/2'
    """
    if n < 0:
        raise ValueError(f"cohomological degree must be nonnegative, got {n}")
    factors = c.invariant_factors
    if not factors:
        return AbelianGroup(1, ()) if n == 0 else AbelianGroup(0, ())
    if len(factors) == 1:
        return _cyclic_cohomology(factors[0], n)
    if len(factors) > 2:
        raise ValueError("only products of at most two cyclic factors are supported")
    m1, m2 = factors
    pieces = [_tensor(_cyclic_cohomology(m1, i), _cyclic_cohomology(m2, n - i))
              for i in range(n + 1)]
    pieces += [_tor(_cyclic_cohomology(m1, i), _cyclic_cohomology(m2, n + 1 - i))
               for i in range(n + 2)]
    return _direct_sum(pieces)
