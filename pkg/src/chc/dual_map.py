"""Dual polyhedral map of a triangulated surface.

One dual vertex per triangle, one dual edge per shared edge, one dual face
per vertex of the complex. For a q-equivelar triangulation the result is a
{q,3} map: every dual vertex has degree 3 and every dual face walk has
length q. Dual vertices are triangle indices, so counts swap places with
the primal ones.

Face walks are normalized for determinism: each walk starts at its smallest
dual vertex and proceeds toward the smaller of that vertex's two neighbors
in the walk.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex_core import Edge, Triangle, Triangulation, validate_surface
from .errors import InternalInconsistency, UnknownVertex


@dataclass(frozen=True)
class PolyhedralMap:
    """Dual map. Faces are indexed in sorted order of their primal vertex."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: dict[int, tuple[int, ...]]
    face_walks: tuple[tuple[int, ...], ...]
    face_ids: dict[str, int]

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)


@dataclass(frozen=True)
class DualCorrespondence:
    """Bijections back to the primal complex.

    triangle_of  dual vertex index -> triangle
    edge_of      dual edge -> primal edge it crosses
    vertex_of    dual face index -> primal vertex it surrounds
    """

    triangle_of: dict[int, Triangle]
    edge_of: dict[tuple[int, int], Edge]
    vertex_of: dict[int, str]


def dualize(t: Triangulation) -> tuple[PolyhedralMap, DualCorrespondence]:
    """Dual map plus correspondence. Validates t first."""
    validate_surface(t)

    edges = []
    edge_of = {}
    for e, (i, j) in sorted(t.edge_triangles.items()):
        de = (i, j) if i < j else (j, i)
        edges.append(de)
        edge_of[de] = e
    edges.sort()

    adjacency: dict[int, list[int]] = {i: [] for i in range(len(t.triangles))}
    for u, w in edges:
        adjacency[u].append(w)
        adjacency[w].append(u)

    walks = []
    face_ids = {}
    vertex_of = {}
    for fid, v in enumerate(t.vertices):
        walks.append(_walk_around(t, v))
        face_ids[v] = fid
        vertex_of[fid] = v

    m = PolyhedralMap(
        vertex_count=len(t.triangles),
        edges=tuple(edges),
        adjacency={u: tuple(sorted(ws)) for u, ws in adjacency.items()},
        face_walks=tuple(walks),
        face_ids=face_ids,
    )
    corr = DualCorrespondence(
        triangle_of={i: tri for i, tri in enumerate(t.triangles)},
        edge_of=edge_of,
        vertex_of=vertex_of,
    )
    if sum(len(w) for w in m.face_walks) != 2 * len(m.edges):
        raise InternalInconsistency("face walks do not cover each dual edge twice")
    return m, corr


def face_walk(m: PolyhedralMap, v: str) -> tuple[int, ...]:
    """Normalized walk of dual vertices around primal vertex v."""
    if v not in m.face_ids:
        raise UnknownVertex(f"no vertex {v!r} in the complex")
    return m.face_walks[m.face_ids[v]]


def _walk_around(t: Triangulation, v: str) -> tuple[int, ...]:
    # neighbors of triangle i around v: the two triangles across the edges at v
    def around(i):
        out = []
        tri = t.triangles[i]
        for x in tri:
            if x == v:
                continue
            e = (v, x) if v < x else (x, v)
            out.extend(j for j in t.edge_triangles[e] if j != i)
        return out

    start = min(t.vertex_triangles[v])
    a, b = around(start)
    walk = [start, min(a, b)]
    while len(walk) < len(t.vertex_triangles[v]):
        x, y = around(walk[-1])
        walk.append(y if x == walk[-2] else x)
    return tuple(walk)
