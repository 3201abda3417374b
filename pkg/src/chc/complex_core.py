"""Triangulated closed surfaces as plain combinatorial data.

A surface is given by its list of triangles over opaque vertex labels.
Everything else (edges, links, Euler characteristic, orientability) is
derived from that list. Labels are compared as strings, lexicographically,
so "10" sorts before "2"; all ordering in the package flows from that rule
and from triangles being stored as sorted triples in sorted list order.

The text format is one triangle per line, three whitespace-separated vertex
tokens, with '#' starting a comment. Files are UTF-8.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadParams,
    DegenerateTriangle,
    Disconnected,
    FormatError,
    NotClosed,
    NotManifold,
    UnknownFamily,
)

Vertex = str
Edge = tuple[str, str]
Triangle = tuple[str, str, str]


class Triangulation:
    """Face list plus derived incidence tables, read-only after construction.

    triangles        sorted tuple of sorted label triples
    vertices         sorted tuple of labels
    edges            sorted tuple of sorted label pairs
    edge_triangles   edge -> tuple of triangle indices containing it
    vertex_triangles label -> tuple of triangle indices containing it
    neighbors        label -> sorted tuple of adjacent labels

    Triangle indices always refer to positions in `triangles`; every other
    module reuses that numbering (the CLI prints index i as "t<i>").
    """

    __slots__ = ("triangles", "vertices", "edges",
                 "edge_triangles", "vertex_triangles", "neighbors")

    def __init__(self, faces):
        tris = []
        for face in faces:
            tri = tuple(sorted(str(v) for v in face))
            if len(tri) != 3 or len(set(tri)) != 3:
                raise DegenerateTriangle(f"triangle with repeated vertex: {tri}")
            tris.append(tri)
        if not tris:
            raise FormatError("no triangles")
        tris.sort()
        for a, b in zip(tris, tris[1:]):
            if a == b:
                raise DegenerateTriangle("triangle listed twice: " + " ".join(a))
        self.triangles: tuple[Triangle, ...] = tuple(tris)
        self.vertices: tuple[Vertex, ...] = tuple(sorted({v for t in tris for v in t}))

        edge_tris: dict[Edge, list[int]] = {}
        vert_tris: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for i, tri in enumerate(self.triangles):
            for e in combinations(tri, 2):
                edge_tris.setdefault(e, []).append(i)
            for v in tri:
                vert_tris[v].append(i)
        self.edges: tuple[Edge, ...] = tuple(sorted(edge_tris))
        self.edge_triangles = {e: tuple(ix) for e, ix in edge_tris.items()}
        self.vertex_triangles = {v: tuple(ix) for v, ix in vert_tris.items()}

        nbrs: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        self.neighbors = {v: tuple(sorted(s)) for v, s in nbrs.items()}

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors[v])

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        return cls(parse_triangles(text))

    @classmethod
    def load(cls, path) -> "Triangulation":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def to_text(self) -> str:
        return "".join(" ".join(tri) + "\n" for tri in self.triangles)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.triangles == other.triangles

    def __hash__(self):
        return hash(self.triangles)

    def __repr__(self):
        return (f"Triangulation({len(self.vertices)} vertices, "
                f"{len(self.triangles)} triangles)")


def parse_triangles(text: str) -> list[tuple[str, str, str]]:
    """Raw token triples from the text format. Raises FormatError on shape problems."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3:
            raise FormatError(f"line {lineno}: expected 3 vertex tokens, got {len(toks)}")
        rows.append((toks[0], toks[1], toks[2]))
    if not rows:
        raise FormatError("no triangles")
    return rows


@dataclass(frozen=True)
class SurfaceReport:
    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    orientable: bool
    equivelar_degree: int | None

    def as_dict(self) -> dict:
        # JSON surface uses the phrase "not equivelar" instead of null
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "face_count": self.face_count,
            "chi": self.euler_characteristic,
            "orientable": self.orientable,
            "equivelar_degree": (self.equivelar_degree
                                 if self.equivelar_degree is not None
                                 else "not equivelar"),
        }


def euler_characteristic(t: Triangulation) -> int:
    return len(t.vertices) - len(t.edges) + len(t.triangles)


def equivelar_degree(t: Triangulation) -> int | None:
    """Common vertex degree, or None when degrees differ."""
    degs = {len(t.neighbors[v]) for v in t.vertices}
    if len(degs) == 1:
        return degs.pop()
    return None


def validate_surface(t: Triangulation) -> SurfaceReport:
    """Check that t is a closed connected 2-manifold and report its statistics.

    Raises NotClosed, NotManifold, or Disconnected naming the first witness
    in sorted order. Degenerate and duplicate faces are rejected earlier, at
    construction time.
    """
    for e in t.edges:
        k = len(t.edge_triangles[e])
        if k != 2:
            raise NotClosed(f"edge {e[0]}-{e[1]} lies in {k} triangles, expected 2")

    for v in t.vertices:
        if not _link_is_single_cycle(t, v):
            raise NotManifold(f"link of vertex {v} is not a single cycle")

    orientable = _orient(t)

    return SurfaceReport(
        vertex_count=len(t.vertices),
        edge_count=len(t.edges),
        face_count=len(t.triangles),
        euler_characteristic=euler_characteristic(t),
        orientable=orientable,
        equivelar_degree=equivelar_degree(t),
    )


def _link_is_single_cycle(t: Triangulation, v: Vertex) -> bool:
    # With every edge on exactly 2 triangles the link is 2-regular, so a
    # single cycle is the same as the link graph being connected.
    tris = t.vertex_triangles[v]
    adj: dict[str, list[str]] = {}
    for i in tris:
        a, b = (x for x in t.triangles[i] if x != v)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        return False
    start = min(adj)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(adj)


def _edge_sense(tri: Triangle, e: Edge) -> int:
    """+1 when the cycle (a,b,c) walks edge e in sorted direction, else -1."""
    a, b, c = tri
    if e == (a, b) or e == (b, c):
        return 1
    return -1


def _orient(t: Triangulation) -> bool:
    """Propagate a coherent orientation across shared edges.

    Starts from triangle 0 oriented by its sorted vertex order and breadth
    first visits edge-adjacent triangles in index order, so the outcome does
    not depend on input line order. Also detects disconnection, since after
    the manifold checks face connectivity equals vertex connectivity.
    """
    sign = {0: 1}
    queue = deque([0])
    orientable = True
    while queue:
        i = queue.popleft()
        tri = t.triangles[i]
        for e in combinations(tri, 2):
            other = [j for j in t.edge_triangles[e] if j != i]
            j = other[0]
            # coherent means the shared edge is walked in opposite directions
            need = -sign[i] * _edge_sense(tri, e) * _edge_sense(t.triangles[j], e)
            if j in sign:
                if sign[j] != need:
                    orientable = False
            else:
                sign[j] = need
                queue.append(j)
    if len(sign) != len(t.triangles):
        raise Disconnected(f"complex splits into parts, "
                           f"reached {len(sign)} of {len(t.triangles)} triangles")
    return orientable


# ---------------------------------------------------------------------------
# fixture families

FIXTURE_FAMILIES = ("tetrahedron", "octahedron", "icosahedron",
                    "cyclic7_torus", "torus_grid")


def generate_fixture(name: str, a: int | None = None, b: int | None = None) -> Triangulation:
    """Build a named fixture. torus_grid takes sizes a, b >= 3, others take none."""
    if name not in FIXTURE_FAMILIES:
        raise UnknownFamily(f"unknown fixture family: {name!r}")
    if name != "torus_grid":
        if a is not None or b is not None:
            raise BadParams(f"{name} takes no parameters")
        return Triangulation(_FIXED_FAMILIES[name]())
    if a is None or b is None:
        raise BadParams("torus_grid needs both a and b")
    if not (isinstance(a, int) and isinstance(b, int)) or a < 3 or b < 3:
        # smaller grids collapse edges under the wraparound identification
        raise BadParams(f"torus_grid sizes must be integers >= 3, got a={a} b={b}")
    return Triangulation(_torus_grid(a, b))


def _tetrahedron():
    return [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


def _octahedron():
    tris = []
    for k in range(4):
        a, b = k + 1, (k + 1) % 4 + 1
        tris.append((a, b, 5))
        tris.append((a, b, 6))
    return tris


def _icosahedron():
    return [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
            (2, 3, 7), (3, 4, 8), (4, 5, 9), (5, 6, 10), (6, 2, 11),
            (3, 7, 8), (4, 8, 9), (5, 9, 10), (6, 10, 11), (2, 11, 7),
            (7, 8, 12), (8, 9, 12), (9, 10, 12), (10, 11, 12), (11, 7, 12)]


def _cyclic7_torus():
    # the 7-vertex 2-neighborly torus, two cyclic difference orbits
    tris = []
    for i in range(7):
        tris.append((i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1))
        tris.append((i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1))
    return tris


def _torus_grid(a: int, b: int):
    # each grid square split along the (i,j)-(i+1,j+1) diagonal
    def v(i, j):
        return (i % a) * b + (j % b) + 1

    tris = []
    for i in range(a):
        for j in range(b):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return tris


_FIXED_FAMILIES = {
    "tetrahedron": _tetrahedron,
    "octahedron": _octahedron,
    "icosahedron": _icosahedron,
    "cyclic7_torus": _cyclic7_torus,
}


def parse_fixture_spec(spec: str) -> Triangulation:
    """Fixture from a spec string, e.g. "octahedron" or "torus_grid:3x4"."""
    name, _, params = spec.partition(":")
    if name != "torus_grid":
        if params:
            raise BadParams(f"{name} takes no parameters, got {params!r}")
        return generate_fixture(name)
    m = params.split("x")
    if len(m) != 2:
        raise BadParams(f"torus_grid spec must look like torus_grid:AxB, got {spec!r}")
    try:
        a, b = int(m[0]), int(m[1])
    except ValueError:
        raise BadParams(f"torus_grid sizes must be integers, got {params!r}") from None
    return generate_fixture("torus_grid", a=a, b=b)
