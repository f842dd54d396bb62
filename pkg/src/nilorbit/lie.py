"""Root systems, Weyl group actions, and parabolic coset enumeration.

Weights live in simple-root coordinates: a vector (c_1, ..., c_r) stands
for sum(c_i * alpha_i).  The bilinear form is the symmetrized Cartan form,
normalized so long roots have squared length 2; this keeps every type,
including G2 and F4, inside exact rational arithmetic.

Weyl group elements are stored as words in the simple reflections and act
by composing reflections; they are never materialized as matrices.  Coset
spaces W/W_Lambda are enumerated by breadth-first search on the orbit of a
dominant weight whose stabilizer is exactly W_Lambda, so BFS depth equals
minimal coset length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    CapExceededError,
    InternalInvariantError,
    InvalidLieTypeError,
    RankMismatchError,
)

DEFAULT_CAP = 100_000

_RANK_CONSTRAINTS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class LieType:
    """A simple type: family letter A-G plus rank."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_CONSTRAINTS:
            raise InvalidLieTypeError(
                f"unknown family {self.family!r}; expected one of A-G")
        lo, hi = _RANK_CONSTRAINTS[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            if hi == lo:
                bound = f"rank {lo}"
            elif hi is None:
                bound = f"rank >= {lo}"
            else:
                bound = f"rank in {lo}..{hi}"
            raise InvalidLieTypeError(
                f"{self.family}{self.rank} is not a simple type ({self.family} needs {bound})")

    @classmethod
    def from_string(cls, text: str) -> "LieType":
        """Parse strings like ``'G2'`` or ``'A13'``.

        >>> LieType.from_string("E6")
        LieType(family='E', rank=6)
        """
        text = text.strip()
        if len(text) < 2 or text[0] not in _RANK_CONSTRAINTS or not text[1:].isdigit():
            raise InvalidLieTypeError(
                f"cannot parse Lie type from {text!r}; expected a family letter A-G "
                "followed by a decimal rank, e.g. 'B3'")
        return cls(text[0], int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Weight:
    """An element of the rational span of the simple roots.

    Coordinates are exact rationals in the simple-root basis; the same data
    doubles as a degree-two cohomology class of a point via
    ``MultiPoly.linear_form(w.coords)``.
    """

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords: Rational) -> "Weight":
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, scalar: Rational) -> "Weight":
        s = Fraction(scalar)
        return Weight(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def sign_normalized(self) -> "Weight":
        """This weight or its negative, whichever has positive leading coordinate."""
        for c in self.coords:
            if c:
                return self if c > 0 else -self
        return self

    def sort_key(self):
        return self.coords

    def __repr__(self):
        return f"Weight({', '.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class WeylWord:
    """A word in the simple reflections, letters in 1..rank.

    The word s_{i1} ... s_{ik} acts as the composition with s_{ik} applied
    first (rightmost innermost), matching how one reads the product.
    """

    letters: tuple[int, ...]

    @classmethod
    def of(cls, *letters: int) -> "WeylWord":
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class RootSystem:
    """The root datum of a simple type, fully enumerated.

    ``cartan_matrix[i][j]`` is the pairing of alpha_{j+1} with the coroot of
    alpha_{i+1}; the symmetrizer d satisfies d_i a_ij = d_j a_ji with
    max(d) = 1, making ``(u, v) = sum d_i u_i a_ij v_j`` the long-norm-2
    invariant form.  ``xi`` is the set of (1-based) simple indices whose
    roots are orthogonal to the highest root.
    """

    lie_type: LieType
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    all_roots: frozenset[Weight]
    positive_roots: frozenset[Weight]
    negative_roots: frozenset[Weight]
    highest_root: Weight
    long_roots: frozenset[Weight]
    xi: frozenset[int]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        r = self.rank
        return tuple(Weight(tuple(Fraction(int(i == j)) for j in range(r)))
                     for i in range(r))


def _cartan_matrix(t: LieType) -> list[list[int]]:
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if t.family == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif t.family == "B":
        # last simple root short
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)
    elif t.family == "C":
        # last simple root long
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)
    elif t.family == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif t.family == "E":
        # chain 1-3-4-5-(6-7-8) with node 2 hanging off node 4 (Bourbaki)
        chain = [0] + list(range(2, n))
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif t.family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif t.family == "G":
        # alpha_1 short, alpha_2 long (Bourbaki)
        bond(0, 1, -3, -1)
    return a


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """Positive d with d_i a_ij = d_j a_ji, scaled so max(d) = 1."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    todo = True
    while todo:
        todo = False
        for i in range(n):
            if d[i] is None:
                continue
            for j in range(n):
                if cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    todo = True
    if any(x is None for x in d):
        raise InternalInvariantError("Dynkin diagram of a simple type must be connected")
    top = max(d)
    return [x / top for x in d]


def _pairing_with_coroot(cartan, weight: Weight, i: int) -> Fraction:
    """<weight, alpha_i^vee> for 0-based i."""
    return sum(Fraction(cartan[i][j]) * c for j, c in enumerate(weight.coords))


def _simple_reflection(cartan, i: int, weight: Weight) -> Weight:
    c = _pairing_with_coroot(cartan, weight, i)
    if not c:
        return weight
    coords = list(weight.coords)
    coords[i] -= c
    return Weight(tuple(coords))


def _close_under_reflections(cartan, seeds: Iterable[Weight], cap: int = DEFAULT_CAP) -> set[Weight]:
    n = len(cartan)
    found = set(seeds)
    frontier = list(found)
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n):
                image = _simple_reflection(cartan, i, w)
                if image not in found:
                    found.add(image)
                    nxt.append(image)
        if len(found) > cap:
            raise CapExceededError(
                f"reflection closure exceeded cap of {cap} elements")
        frontier = nxt
    return found


@lru_cache(maxsize=None)
def build_root_system(t: LieType) -> RootSystem:
    """Enumerate the root system of a simple type.

    >>> rs = build_root_system(LieType("G", 2))
    >>> len(rs.all_roots), len(rs.long_roots)
    (12, 6)
    """
    cartan = _cartan_matrix(t)
    d = _symmetrizer(cartan)
    n = t.rank
    gram = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]

    def form(u: Weight, v: Weight) -> Fraction:
        return sum(u.coords[i] * gram[i][j] * v.coords[j]
                   for i in range(n) for j in range(n))

    simple = [Weight(tuple(Fraction(int(i == j)) for j in range(n))) for i in range(n)]
    roots = _close_under_reflections(cartan, simple)

    top_norm = max(form(r, r) for r in roots)
    if top_norm != 2:
        raise InternalInvariantError(
            f"long-root normalization broken: squared length {top_norm}")
    longs = frozenset(r for r in roots if form(r, r) == 2)
    positives = frozenset(r for r in roots if any(c > 0 for c in r.coords))
    negatives = frozenset(-r for r in positives)
    if positives | negatives != roots or positives & negatives:
        raise InternalInvariantError("roots do not split into positive/negative halves")

    dominant_long = [r for r in longs if all(form(r, s) >= 0 for s in simple)]
    if len(dominant_long) != 1:
        raise InternalInvariantError(
            f"expected a unique dominant long root, found {len(dominant_long)}")
    theta = dominant_long[0]
    # cross-check: the highest root also has maximal height among all roots
    by_height = max(roots, key=lambda r: sum(r.coords))
    if by_height != theta:
        raise InternalInvariantError("dominant long root is not the highest root")

    xi = frozenset(i + 1 for i, s in enumerate(simple) if form(theta, s) == 0)
    return RootSystem(
        lie_type=t,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        symmetrizer=tuple(d),
        all_roots=frozenset(roots),
        positive_roots=positives,
        negative_roots=negatives,
        highest_root=theta,
        long_roots=longs,
        xi=xi,
    )


def inner_product(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    """The invariant form (lam, mu) = sum d_i lam_i a_ij mu_j.

    >>> rs = build_root_system(LieType("B", 2))
    >>> alpha1, alpha2 = rs.simple_roots
    >>> inner_product(rs, alpha2, alpha2)
    Fraction(1, 1)
    >>> inner_product(rs, alpha1 + 2 * alpha2, alpha1)
    Fraction(0, 1)
    """
    n = rs.rank
    if lam.rank != n or mu.rank != n:
        raise RankMismatchError(
            f"weights of rank {lam.rank}/{mu.rank} fed to a rank-{n} root system")
    a = rs.cartan_matrix
    d = rs.symmetrizer
    total = Fraction(0)
    for i, li in enumerate(lam.coords):
        if not li:
            continue
        row = a[i]
        total += d[i] * li * sum(row[j] * mj for j, mj in enumerate(mu.coords) if mj)
    return total


def reflect(rs: RootSystem, lam: Weight, beta: Weight) -> Weight:
    """Reflection of ``lam`` in the hyperplane orthogonal to the root ``beta``."""
    norm = inner_product(rs, beta, beta)
    if not norm:
        raise ValueError("cannot reflect through a zero-norm vector")
    coeff = 2 * inner_product(rs, lam, beta) / norm
    return lam - coeff * beta


def apply_word(rs: RootSystem, word: WeylWord, lam: Weight) -> Weight:
    """Act by a Weyl word: rightmost reflection first, empty word = identity."""
    n = rs.rank
    for letter in reversed(word.letters):
        if not 1 <= letter <= n:
            raise ValueError(f"word letter {letter} outside 1..{n}")
        lam = _simple_reflection(rs.cartan_matrix, letter - 1, lam)
    return lam


def _orbit_levels(rs: RootSystem, start: Weight, cap: int,
                  max_depth: int | None = None) -> list[list[tuple[Weight, tuple[int, ...]]]]:
    """BFS levels of the Weyl orbit of ``start``.

    Each entry is (weight, word letters, 0-based) with the word of minimal
    length mapping ``start`` to the weight.  Levels beyond ``max_depth``
    are not explored, so full enumeration is avoided when truncating.
    """
    cartan = rs.cartan_matrix
    n = rs.rank
    seen = {start}
    levels = [[(start, ())]]
    while True:
        depth = len(levels)
        if max_depth is not None and depth > max_depth:
            break
        frontier = []
        for w, word in levels[-1]:
            for i in range(n):
                image = _simple_reflection(cartan, i, w)
                if image not in seen:
                    seen.add(image)
                    frontier.append((image, (i,) + word))
        if len(seen) > cap:
            raise CapExceededError(
                f"Weyl orbit of {start!r} exceeded cap of {cap}; consider a smaller "
                "type, a larger parabolic, or raising the cap")
        if not frontier:
            break
        levels.append(frontier)
    return levels


def weyl_orbit(rs: RootSystem, lam: Weight, cap: int = DEFAULT_CAP) -> frozenset[Weight]:
    """The full Weyl orbit of a weight.

    The orbit of the highest root is exactly the set of long roots.
    """
    levels = _orbit_levels(rs, lam, cap)
    return frozenset(w for level in levels for w, _ in level)


@lru_cache(maxsize=None)
def fundamental_weights(rs: RootSystem) -> tuple[Weight, ...]:
    """Weights pairing with the simple coroots as the identity matrix.

    In simple-root coordinates these are the columns of the inverse Cartan
    matrix, so all entries are exact rationals.

    >>> rs = build_root_system(LieType("A", 2))
    >>> fundamental_weights(rs)[0]
    Weight(2/3, 1/3)
    """
    n = rs.rank
    aug = [[Fraction(rs.cartan_matrix[i][j]) for j in range(n)]
           + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inverse = [row[n:] for row in aug]
    return tuple(Weight(tuple(inverse[i][j] for i in range(n))) for j in range(n))


@dataclass(frozen=True)
class Coset:
    """One coset of W_Lambda in W: a BFS id, a minimal word, and its tag.

    The tag is the image of the defining dominant weight under the coset;
    distinct cosets always carry distinct tags.
    """

    index: int
    word: WeylWord
    tag: Weight

    @property
    def length(self) -> int:
        return len(self.word)


def _validate_parabolic(rs: RootSystem, lam_set: frozenset[int]) -> frozenset[int]:
    lam_set = frozenset(lam_set)
    bad = [i for i in lam_set if not 1 <= i <= rs.rank]
    if bad:
        raise ValueError(f"parabolic indices {sorted(bad)} outside 1..{rs.rank}")
    return lam_set


def parabolic_base_weight(rs: RootSystem, lam_set: frozenset[int]) -> Weight:
    """Dominant weight with stabilizer exactly W_Lambda: sum of the
    fundamental weights over simple indices NOT in Lambda."""
    lam_set = _validate_parabolic(rs, lam_set)
    fw = fundamental_weights(rs)
    base = Weight.zero(rs.rank)
    for i in range(rs.rank):
        if i + 1 not in lam_set:
            base = base + fw[i]
    return base


def coset_representatives(rs: RootSystem, lam_set: frozenset[int],
                          cap: int = DEFAULT_CAP) -> tuple[Coset, ...]:
    """Minimal-length representatives of W/W_Lambda, in BFS discovery order.

    >>> rs = build_root_system(LieType("A", 1))
    >>> [c.length for c in coset_representatives(rs, frozenset())]
    [0, 1]
    """
    base = parabolic_base_weight(rs, lam_set)
    levels = _orbit_levels(rs, base, cap)
    out = []
    for level in levels:
        for tag, letters in level:
            out.append(Coset(index=len(out),
                             word=WeylWord(tuple(i + 1 for i in letters)),
                             tag=tag))
    return tuple(out)


def coset_poincare_polynomial(rs: RootSystem, lam_set: frozenset[int],
                              cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Coefficients of sum(q^length) over W/W_Lambda.

    Coefficient d is the number of minimal coset representatives of length
    d, i.e. the ordinary Betti number of the flag variety in degree 2d.

    >>> rs = build_root_system(LieType("A", 2))
    >>> coset_poincare_polynomial(rs, frozenset())
    (1, 2, 2, 1)
    """
    base = parabolic_base_weight(rs, lam_set)
    levels = _orbit_levels(rs, base, cap)
    return tuple(len(level) for level in levels)
