"""Torus-fixed points of the projectivized minimal orbit and its moment polytope.

The fixed points of the projectivized minimal orbit are the root lines of
the long roots, and the moment map sends each to the root itself, so the
moment polytope is the convex hull of the long roots.  Every long root is
a vertex: they all lie on the sphere of squared radius 2, and a point of a
sphere is never a convex combination of other points of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantError
from .lie import RootSystem, Weight, inner_product


@dataclass(frozen=True)
class Polytope:
    """A polytope given by its certified vertex list."""

    rank: int
    vertices: tuple[Weight, ...]

    def __len__(self):
        return len(self.vertices)


def projective_fixed_points(rs: RootSystem) -> tuple[Weight, ...]:
    """The long roots, each standing for the fixed root line it spans.

    Deterministically ordered by coordinates.
    """
    return tuple(sorted(rs.long_roots, key=Weight.sort_key))


def certify_extremal(rs: RootSystem, vertices: tuple[Weight, ...]) -> None:
    """Exact certificate that no vertex is a convex combination of the rest.

    Uses equal norms plus the separating functional (v, .): if v were a
    convex combination sum(t_u * u) of the others then
    (v, v) = sum(t_u * (u, v)) < (v, v), because (u, v) < (v, v) for every
    other point of the sphere.  Checking that strict inequality for all
    pairs is the rational infeasibility certificate for the defining
    linear program, with no floating point involved.
    """
    n = rs.rank
    gram = [[rs.symmetrizer[i] * rs.cartan_matrix[i][j] for j in range(n)]
            for i in range(n)]
    # pair values via cached Gram images: (u, v) = <u, gram . v>
    images = []
    for v in vertices:
        images.append(tuple(sum(gram[i][j] * v.coords[j] for j in range(n))
                            for i in range(n)))
    for v, gv in zip(vertices, images):
        norm = sum(a * b for a, b in zip(v.coords, gv))
        if norm != 2:
            raise InternalInvariantError(
                f"vertex {v!r} has squared norm {norm}, expected 2")
    for i, v in enumerate(vertices):
        for j, gu in enumerate(images):
            if i == j:
                continue
            if sum(a * b for a, b in zip(v.coords, gu)) >= 2:
                raise InternalInvariantError(
                    f"vertices {vertices[j]!r} and {v!r} violate the strict sphere bound")


def moment_polytope(rs: RootSystem) -> Polytope:
    """The convex hull of the long roots, with extremality certified.

    >>> from .lie import LieType, build_root_system
    >>> len(moment_polytope(build_root_system(LieType("G", 2))))
    6
    """
    vertices = projective_fixed_points(rs)
    certify_extremal(rs, vertices)
    return Polytope(rank=rs.rank, vertices=vertices)
