"""Contractible Hamiltonian cycles and the disks they bound.

The bridge between the two sides of the equivalence: a proper tree on
n - 2 dual vertices spans a triangulated disk whose boundary is a
Hamiltonian cycle of the surface, and conversely the disk bounded by a
contractible Hamiltonian cycle dualizes to a proper tree. find_chc runs
the tree search; brute_force_chc is the independent oracle that knows
nothing about dual maps and simply tries Hamiltonian cycles one by one.

Contractibility here is combinatorial. Cutting the surface along a cycle h
partitions the triangles into edge-connected components (crossing an edge
of h is forbidden); h is contractible when some component is a disk with
boundary exactly h, that is, Euler characteristic 1 and its once-covered
edges equal to h's edge set. When several components qualify (on a sphere
both sides do) the one containing the smallest triangle index wins.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complex_core import (
    Triangle,
    Triangulation,
    equivelar_degree,
    euler_characteristic,
    validate_surface,
)
from .dual_map import PolyhedralMap, dualize
from .errors import (
    ImproperTree,
    InternalInconsistency,
    NotACycle,
    NotATree,
    NotEquivelar,
    NotHamiltonian,
    TooLarge,
)
from .proper_tree import (
    DEFAULT_BUDGET,
    CandidateTree,
    TreeSearchResult,
    check_proper,
    find_proper_tree,
)

ORACLE_LIMIT = 14


class VertexCycle:
    """Cyclic sequence of distinct vertices, held in canonical orientation.

    Canonical form starts at the smallest label and proceeds toward the
    smaller of its two neighbors, so two sequences denote the same cycle
    exactly when their canonical tuples are equal.
    """

    __slots__ = ("vertices",)

    def __init__(self, seq):
        vs = [str(v) for v in seq]
        if len(vs) < 3:
            raise NotACycle(f"cycle needs at least 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise NotACycle("repeated vertex in cycle")
        self.vertices: tuple[str, ...] = _canonical_rotation(vs)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, VertexCycle) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "VertexCycle(" + ",".join(self.vertices) + ")"

    def edge_set(self) -> frozenset:
        n = len(self.vertices)
        out = set()
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            out.add((a, b) if a < b else (b, a))
        return frozenset(out)


def _canonical_rotation(vs: list[str]) -> tuple[str, ...]:
    n = len(vs)
    k = vs.index(min(vs))
    rot = vs[k:] + vs[:k]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def as_cycle(h) -> VertexCycle:
    return h if isinstance(h, VertexCycle) else VertexCycle(h)


@dataclass(frozen=True)
class TriangulatedDisk:
    face_indices: tuple[int, ...]
    triangles: tuple[Triangle, ...]
    boundary: VertexCycle


@dataclass(frozen=True)
class CycleSearchResult:
    verdict: str                      # "found", "none" or "budget_exceeded"
    cycle: VertexCycle | None
    disk: TriangulatedDisk | None
    expansions: int


def cycle_is_contractible(t: Triangulation, h) -> tuple[bool, tuple[int, ...] | None]:
    """Whether cycle h bounds a disk, with the witness component if so.

    t must already be a validated closed surface. h may be a VertexCycle or
    any vertex sequence; it must run along edges of t (NotACycle otherwise).
    The witness is a sorted tuple of triangle indices. For Hamiltonian h the
    disk count and vertex placement are additionally asserted, since the
    math fixes them.
    """
    h = as_cycle(h)
    hedges = h.edge_set()
    for e in sorted(hedges):
        if e not in t.edge_triangles:
            raise NotACycle(f"cycle step {e[0]}-{e[1]} is not an edge of the complex")

    parent = list(range(len(t.triangles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (i, j) in t.edge_triangles.items():
        if e not in hedges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

    comps: dict[int, list[int]] = {}
    for i in range(len(t.triangles)):
        comps.setdefault(find(i), []).append(i)

    for members in sorted(comps.values(), key=min):
        if _bounds_disk(t, members, hedges):
            witness = tuple(sorted(members))
            if len(h) == len(t.vertices):
                _assert_hamiltonian_witness(t, h, witness)
            return True, witness
    return False, None


def _bounds_disk(t: Triangulation, members: list[int], hedges: frozenset) -> bool:
    verts: set[str] = set()
    count: dict = {}
    for i in members:
        verts.update(t.triangles[i])
        for e in combinations(t.triangles[i], 2):
            count[e] = count.get(e, 0) + 1
    boundary = {e for e, c in count.items() if c == 1}
    if boundary != hedges:
        return False
    chi = len(verts) - len(count) + len(members)
    return chi == 1


def _assert_hamiltonian_witness(t, h, witness) -> None:
    n = len(t.vertices)
    if len(witness) != n - 2:
        raise InternalInconsistency(
            f"disk bounded by a Hamiltonian cycle has {len(witness)} faces, wanted {n - 2}")
    on_cycle = set(h)
    for i in witness:
        if not set(t.triangles[i]) <= on_cycle:
            raise InternalInconsistency(
                f"witness triangle {i} has a vertex off the Hamiltonian cycle")


def disk_from_tree(t: Triangulation, m: PolyhedralMap, tree: CandidateTree) -> TriangulatedDisk:
    """Disk spanned by the triangles of a proper tree.

    The tree is re-checked (ImproperTree if it fails). The conclusions the
    math guarantees for the result are asserted outright: n - 2 faces,
    Euler characteristic 1, and a single boundary cycle through all n
    vertices. Any failure is an InternalInconsistency.
    """
    verdict = check_proper(tree, m, t)
    if not verdict.proper:
        raise ImproperTree(verdict.violations[0].detail)

    faces = tuple(sorted(tree.vertices))
    tris = tuple(t.triangles[i] for i in faces)

    verts: set[str] = set()
    count: dict = {}
    for tri in tris:
        verts.update(tri)
        for e in combinations(tri, 2):
            count[e] = count.get(e, 0) + 1
    chi = len(verts) - len(count) + len(tris)
    if chi != 1:
        raise InternalInconsistency(f"disk has Euler characteristic {chi}, wanted 1")

    boundary = _boundary_cycle(count)
    if boundary is None or len(boundary) != len(t.vertices):
        raise InternalInconsistency("disk boundary is not a single Hamiltonian cycle")
    return TriangulatedDisk(face_indices=faces, triangles=tris, boundary=boundary)


def _boundary_cycle(edge_count: dict) -> VertexCycle | None:
    adj: dict[str, list[str]] = {}
    for (a, b), c in edge_count.items():
        if c == 1:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    if not adj or any(len(nb) != 2 for nb in adj.values()):
        return None
    start = min(adj)
    walk = [start, min(adj[start])]
    while walk[-1] != start:
        x, y = adj[walk[-1]]
        walk.append(y if x == walk[-2] else x)
    walk.pop()
    if len(walk) != len(adj):
        return None
    return VertexCycle(walk)


def tree_from_cycle(t: Triangulation, m: PolyhedralMap, h) -> CandidateTree | None:
    """Proper tree dual to the disk a contractible Hamiltonian cycle bounds.

    Returns None when h is not contractible. h must be Hamiltonian
    (NotHamiltonian otherwise). The recovered subgraph is asserted to pass
    check_proper; the construction guarantees it, so a failure means the
    input complex or this package is broken, and the error says which cycle
    to look at.
    """
    h = as_cycle(h)
    if len(h) != len(t.vertices):
        raise NotHamiltonian(f"cycle visits {len(h)} of {len(t.vertices)} vertices")
    ok, witness = cycle_is_contractible(t, h)
    if not ok:
        return None

    inside = set(witness)
    edges = []
    for e, (i, j) in t.edge_triangles.items():
        if i in inside and j in inside:
            edges.append((i, j) if i < j else (j, i))
    tree = CandidateTree.of(witness, edges)

    try:
        verdict = check_proper(tree, m, t)
    except NotATree as exc:
        raise InternalInconsistency(
            f"disk dual of cycle {','.join(h)} is not even a tree: {exc}") from exc
    if not verdict.proper:
        raise InternalInconsistency(
            f"disk dual of cycle {','.join(h)} is not proper: "
            f"{verdict.violations[0].detail}")
    return tree


def find_chc(t: Triangulation, budget: int = DEFAULT_BUDGET,
             threads: int = 1) -> CycleSearchResult:
    """Contractible Hamiltonian cycle via the proper-tree search.

    Requires an equivelar surface (NotEquivelar otherwise). The verdicts
    mirror find_proper_tree: "none" certifies that no proper tree, hence no
    contractible Hamiltonian cycle, exists.
    """
    validate_surface(t)
    if equivelar_degree(t) is None:
        raise NotEquivelar("vertex degrees differ")
    m, _ = dualize(t)
    res: TreeSearchResult = find_proper_tree(m, t, budget=budget, threads=threads)
    if res.verdict != "found":
        return CycleSearchResult(res.verdict, None, None, res.expansions)
    disk = disk_from_tree(t, m, res.tree)
    return CycleSearchResult("found", disk.boundary, disk, res.expansions)


def brute_force_chc(t: Triangulation, max_vertices: int = ORACLE_LIMIT) -> VertexCycle | None:
    """Oracle: first contractible Hamiltonian cycle by direct enumeration.

    Backtracking over vertex paths anchored at the smallest vertex,
    neighbors tried in ascending label order, each closed cycle taken in
    one orientation only (second vertex below the last). Uses nothing from
    the dual-map or tree machinery, which is the point; refuses inputs
    beyond max_vertices (TooLarge) because the enumeration is factorial.
    """
    validate_surface(t)
    n = len(t.vertices)
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds the oracle limit {max_vertices}")

    verts = t.vertices
    index = {v: i for i, v in enumerate(verts)}
    nbr = [tuple(sorted(index[w] for w in t.neighbors[v])) for v in verts]
    start_adj = set(nbr[0])

    path = [0]
    on_path = [False] * n
    on_path[0] = True

    def extend() -> VertexCycle | None:
        last = path[-1]
        if len(path) == n:
            if last in start_adj and path[1] < path[-1]:
                cycle = VertexCycle(verts[i] for i in path)
                ok, _ = cycle_is_contractible(t, cycle)
                if ok:
                    return cycle
            return None
        for w in nbr[last]:
            if not on_path[w]:
                path.append(w)
                on_path[w] = True
                hit = extend()
                path.pop()
                on_path[w] = False
                if hit is not None:
                    return hit
        return None

    return extend()
