"""Proper trees in the dual map.

A proper tree is a tree T on n - 2 dual vertices (n the primal vertex
count) such that on every dual face walk the tree vertices form a single
contiguous arc whose edges all belong to T, and that arc spans at most
len(walk) - 2 edges. On equivelar input every walk has length q, so the
arc bound is q - 2.

check_proper evaluates the definition on an explicit candidate subgraph.
The searches exploit two consequences of it:

* Any two tree vertices adjacent in the dual map must be joined by that
  very edge inside a proper tree (the only other boundary path between
  them would be a whole walk minus one edge, which is too long). Proper
  trees are therefore induced subtrees, and enumerating connected induced
  subgraphs by vertex set is exhaustive.
* Growth is one leaf at a time, so per face the number of arc components
  never decreases and arcs never shrink. A violated face can never be
  repaired and the branch is pruned on the spot.

Enumeration order is deterministic and thread-count invariant: seeds (the
minimum vertex of each tree) run in ascending order, and inside a seed the
expansion always pivots on the smallest undecided frontier vertex, taking
the include branch before the exclude branch. Parallel workers search whole
seeds independently and a sequential fold replays their expansion counts in
seed order, so the reported result and budget verdict match a single
threaded run exactly.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .complex_core import Triangulation
from .dual_map import PolyhedralMap
from .errors import BudgetExceeded, InternalInconsistency, NotATree

DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class CandidateTree:
    """A subgraph of the dual map given by vertex and edge sets."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, vertices, edges) -> "CandidateTree":
        es = frozenset((u, w) if u < w else (w, u) for u, w in edges)
        return cls(frozenset(vertices), es)

    def sorted_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))

    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def key(self):
        return (self.sorted_vertices(), self.sorted_edges())


@dataclass(frozen=True)
class Violation:
    condition: str        # "size", "boundary-path" or "arc-length"
    face_vertex: str | None
    detail: str


@dataclass(frozen=True)
class ProperVerdict:
    proper: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class TreeSearchResult:
    verdict: str          # "found", "none" or "budget_exceeded"
    tree: CandidateTree | None
    expansions: int


def check_proper(tree: CandidateTree, m: PolyhedralMap, t: Triangulation) -> ProperVerdict:
    """Evaluate the proper-tree conditions on an explicit candidate.

    The candidate must be a tree inside the dual map (NotATree otherwise).
    Violations are reported in order: wrong size first, then per face in
    face order, the broken-arc condition before the arc-length one.
    """
    _require_tree(tree, m)

    violations = []
    want = len(t.vertices) - 2
    if len(tree.vertices) != want:
        violations.append(Violation(
            "size", None,
            f"tree has {len(tree.vertices)} vertices, needs n - 2 = {want}"))

    for fid, walk in enumerate(m.face_walks):
        k = len(walk)
        on_face = sum(1 for u in walk if u in tree.vertices)
        if on_face == 0:
            continue
        arc_edges = 0
        for i in range(k):
            u, w = walk[i], walk[(i + 1) % k]
            if ((u, w) if u < w else (w, u)) in tree.edges:
                arc_edges += 1
        v = _face_vertex(m, fid)
        pieces = on_face - arc_edges
        if pieces >= 2:
            violations.append(Violation(
                "boundary-path", v,
                f"tree vertices on the walk of {v} form {pieces} arcs, not one"))
        elif arc_edges > k - 2:
            violations.append(Violation(
                "arc-length", v,
                f"arc on the walk of {v} has {arc_edges} edges, limit {k - 2}"))

    return ProperVerdict(proper=not violations, violations=tuple(violations))


def _face_vertex(m: PolyhedralMap, fid: int) -> str:
    for v, i in m.face_ids.items():
        if i == fid:
            return v
    raise InternalInconsistency(f"face id {fid} has no vertex")


def _require_tree(tree: CandidateTree, m: PolyhedralMap) -> None:
    if not tree.vertices:
        raise NotATree("empty vertex set")
    if not tree.vertices <= set(range(m.vertex_count)):
        raise NotATree("vertex outside the dual map")
    edge_set = m.edge_set
    for e in tree.edges:
        if e not in edge_set:
            raise NotATree(f"edge {e} is not a dual edge")
        if not (e[0] in tree.vertices and e[1] in tree.vertices):
            raise NotATree(f"edge {e} leaves the vertex set")
    if len(tree.edges) != len(tree.vertices) - 1:
        raise NotATree(f"{len(tree.edges)} edges on {len(tree.vertices)} vertices")
    adj: dict[int, list[int]] = {u: [] for u in tree.vertices}
    for u, w in tree.edges:
        adj[u].append(w)
        adj[w].append(u)
    seen = set()
    stack = [min(tree.vertices)]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x])
    if len(seen) != len(tree.vertices):
        raise NotATree("not connected")
    # right edge count + connected rules out cycles


# ---------------------------------------------------------------------------
# search

class _SearchContext:
    """Static tables the per-seed walkers share. Never mutated once built."""

    def __init__(self, m: PolyhedralMap, t: Triangulation):
        self.m = m
        self.t = t
        self.target = len(t.vertices) - 2
        self.nfaces = len(m.face_walks)
        self.walk_limit = [len(w) - 2 for w in m.face_walks]

        self.adj_sorted = [m.adjacency[u] for u in range(m.vertex_count)]
        self.adj_mask = [0] * m.vertex_count
        for u in range(m.vertex_count):
            for w in self.adj_sorted[u]:
                self.adj_mask[u] |= 1 << w

        faces_of: list[list[int]] = [[] for _ in range(m.vertex_count)]
        edge_faces: dict[tuple[int, int], list[int]] = {}
        for fid, walk in enumerate(m.face_walks):
            k = len(walk)
            for i in range(k):
                u, w = walk[i], walk[(i + 1) % k]
                faces_of[walk[i]].append(fid)
                edge_faces.setdefault((u, w) if u < w else (w, u), []).append(fid)
        if any(len(fs) != 3 for fs in faces_of):
            raise InternalInconsistency("a dual vertex is not on exactly 3 faces")
        if any(len(fs) != 2 for fs in edge_faces.values()):
            raise InternalInconsistency("a dual edge is not on exactly 2 faces")
        self.faces_of = [tuple(fs) for fs in faces_of]
        self.edge_faces = {e: tuple(fs) for e, fs in edge_faces.items()}


class _Abort(Exception):
    pass


@dataclass
class _SeedResult:
    seed: int
    hits: list            # (expansion index within seed, vertices tuple, edges tuple)
    used: int
    exceeded: bool


def _explore_seed(ctx: _SearchContext, seed: int, cap: int,
                  max_hits: int | None, stop: threading.Event | None) -> _SeedResult:
    """All proper trees whose minimum vertex is `seed`, discovery order.

    cap bounds expansions (attempted includes) inside this seed; max_hits
    stops after that many trees. Results carry the expansion index at which
    they were found so a fold can reconstruct global budget behavior.
    """
    target = ctx.target
    adj_mask = ctx.adj_mask
    faces_of = ctx.faces_of
    edge_faces = ctx.edge_faces
    walk_limit = ctx.walk_limit
    s_cnt = [0] * ctx.nfaces
    a_cnt = [0] * ctx.nfaces

    hits: list = []
    used = 0
    exceeded = False

    for f in faces_of[seed]:
        s_cnt[f] = 1

    def rec(s_mask, size, frontier, excluded, edges):
        nonlocal used, exceeded
        if size == target:
            hits.append((used, _mask_vertices(s_mask), tuple(edges)))
            return
        for i, u in enumerate(frontier):
            if used >= cap:
                exceeded = True
                raise _Abort
            used += 1
            if stop is not None and used % 4096 == 0 and stop.is_set():
                raise _Abort
            nbr_in = adj_mask[u] & s_mask
            # a second neighbor inside would close an induced cycle
            if nbr_in and nbr_in & (nbr_in - 1) == 0:
                attach = nbr_in.bit_length() - 1
                e = (attach, u) if attach < u else (u, attach)
                fa, fb = edge_faces[e]
                for f in faces_of[u]:
                    s_cnt[f] += 1
                a_cnt[fa] += 1
                a_cnt[fb] += 1
                ok = True
                for f in faces_of[u]:
                    if s_cnt[f] - a_cnt[f] >= 2 or a_cnt[f] > walk_limit[f]:
                        ok = False
                        break
                if ok:
                    edges.append(e)
                    ext = [w for w in ctx.adj_sorted[u]
                           if w > seed and not (s_mask >> w) & 1
                           and not (excluded >> w) & 1 and w not in frontier]
                    rest = frontier[i + 1:]
                    child = sorted(rest + ext) if ext else rest
                    rec(s_mask | (1 << u), size + 1, child, excluded, edges)
                    edges.pop()
                    if max_hits is not None and len(hits) >= max_hits:
                        # unwind without touching counters further
                        for f in faces_of[u]:
                            s_cnt[f] -= 1
                        a_cnt[fa] -= 1
                        a_cnt[fb] -= 1
                        raise _Abort
                for f in faces_of[u]:
                    s_cnt[f] -= 1
                a_cnt[fa] -= 1
                a_cnt[fb] -= 1
            excluded |= 1 << u

    try:
        if target == 1:
            hits.append((0, (seed,), ()))
        else:
            frontier0 = [w for w in ctx.adj_sorted[seed] if w > seed]
            rec(1 << seed, 1, frontier0, 0, [])
    except _Abort:
        pass
    return _SeedResult(seed, hits, used, exceeded)


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    u = 0
    while mask:
        if mask & 1:
            out.append(u)
        mask >>= 1
        u += 1
    return tuple(out)


def _fold(seed_results, budget: int, cap: int | None):
    """Replay per-seed outcomes in seed order under the global budget.

    seed_results is an iterable of _SeedResult in ascending seed order
    (lazy in the sequential path). Returns (trees, verdict, expansions)
    where expansions is what a sequential run would have consumed.
    """
    trees = []
    spent = 0
    for res in seed_results:
        remaining = budget - spent
        for idx, vs, es in res.hits:
            if idx > remaining:
                return trees, "budget_exceeded", budget
            trees.append(CandidateTree.of(vs, es))
            if cap is not None and len(trees) >= cap:
                return trees, "found", spent + idx
        if res.exceeded or res.used > remaining:
            return trees, "budget_exceeded", budget
        spent += res.used
    return trees, ("found" if trees else "none"), spent


def _run_search(m, t, budget, threads, cap):
    ctx = _SearchContext(m, t)
    if ctx.target > m.vertex_count:
        return [], "none", 0
    seeds = list(range(m.vertex_count - ctx.target + 1))

    if threads <= 1 or len(seeds) <= 1:
        def lazy():
            spent = 0
            for s in seeds:
                left = budget - spent
                if left < 0:
                    left = 0
                res = _explore_seed(ctx, s, left, cap, None)
                yield res
                spent += res.used
        return _fold(lazy(), budget, cap)

    stop = threading.Event()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_explore_seed, ctx, s, budget, cap, stop)
                   for s in seeds]

        def ordered():
            for fut in futures:
                yield fut.result()

        out = _fold(ordered(), budget, cap)
        stop.set()
    return out


def find_proper_tree(m: PolyhedralMap, t: Triangulation,
                     budget: int = DEFAULT_BUDGET, threads: int = 1) -> TreeSearchResult:
    """First proper tree in the deterministic search order.

    verdict "none" is only returned after the whole space was exhausted, so
    it certifies nonexistence. "budget_exceeded" certifies nothing.
    """
    trees, verdict, spent = _run_search(m, t, budget, threads, cap=1)
    tree = trees[0] if trees else None
    if tree is not None:
        _assert_proper(tree, m, t)
    return TreeSearchResult(verdict=verdict, tree=tree, expansions=spent)


def enumerate_proper_trees(m: PolyhedralMap, t: Triangulation,
                           cap: int | None = None,
                           budget: int = DEFAULT_BUDGET,
                           threads: int = 1) -> list[CandidateTree]:
    """All proper trees in search order, up to cap when given.

    Raises BudgetExceeded (with the partial list attached) if the budget
    runs out first; a silently truncated list would look like a complete
    enumeration.
    """
    if cap is not None and cap <= 0:
        return []
    trees, verdict, spent = _run_search(m, t, budget, threads, cap)
    for tree in trees:
        _assert_proper(tree, m, t)
    if verdict == "budget_exceeded":
        raise BudgetExceeded(f"enumeration stopped after {budget} expansions",
                             partial=trees, expansions=spent)
    return trees


def _assert_proper(tree: CandidateTree, m, t) -> None:
    verdict = check_proper(tree, m, t)
    if not verdict.proper:
        raise InternalInconsistency(
            f"search produced a non-proper tree: {verdict.violations[0].detail}")
