"""Triangulations feeding the signed-simplex volume formula."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionError
from .linalg import Matrix, rank
from .polytope import PolytopeH, PolytopeV, order_polygon, vertices_of_h

Simplex = tuple[int, tuple[tuple[Fraction, ...], ...]]


def fan_triangulate_polygon(p: PolytopeV, ordered: bool = False) -> list[Simplex]:
    """Fan from the first vertex of a convex polygon."""
    if p.d != 2:
        raise DimensionError("fan triangulation needs a polygon")
    pts = list(p.vertices) if ordered else order_polygon(p.vertices)
    if len(pts) < 3:
        raise DimensionError("a polygon needs at least 3 vertices")
    v0 = pts[0]
    return [(1, (v0, a, b)) for a, b in zip(pts[1:-1], pts[2:])]


def _affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    if len(points) <= 1:
        return len(points) - 1
    p0 = points[0]
    return rank(Matrix([[a - b for a, b in zip(q, p0)] for q in points[1:]]))


def pulling_triangulation(p: PolytopeH) -> list[Simplex]:
    """Triangulate an H-polytope of any dimension by pulling vertices.

    The first vertex of each face is joined to a triangulation of every
    facet of that face which misses it.  Faces are vertex sets cut out by
    common binding rows.
    """
    verts = vertices_of_h(p)
    pts = [v for v, _ in verts]
    binding = [b for _, b in verts]
    nrows = p.A.nrows

    def facets(face: frozenset[int], dim: int) -> list[frozenset[int]]:
        out = set()
        for i in range(nrows):
            sub = frozenset(k for k in face if i in binding[k])
            if sub != face and sub not in out and _affine_dim([pts[k] for k in sorted(sub)]) == dim - 1:
                out.add(sub)
        return sorted(out, key=sorted)

    def tri(face: frozenset[int], dim: int) -> list[tuple[int, ...]]:
        if dim == 0:
            return [(min(face),)]
        apex = min(face)
        out = []
        for f in facets(face, dim):
            if apex in f:
                continue
            out.extend((apex,) + s for s in tri(f, dim - 1))
        return out

    simplices = tri(frozenset(range(len(pts))), p.d)
    return [(1, tuple(pts[k] for k in s)) for s in simplices]
