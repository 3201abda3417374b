"""check_proper and the tree search against independently derived counts."""
import pytest

import chc
from chc import (
    BudgetExceeded,
    CandidateTree,
    NotATree,
    check_proper,
    dualize,
    enumerate_proper_trees,
    find_proper_tree,
)

# full enumeration sizes, confirmed by filtering every candidate subtree of
# the dual graph through a standalone implementation of the two conditions
PROPER_TREE_COUNTS = {
    "tetrahedron": 6,
    "octahedron": 32,
    "cyclic7_torus": 84,
    "torus_grid:3x3": 360,
    "icosahedron": 2560,
}


@pytest.mark.parametrize("spec", sorted(PROPER_TREE_COUNTS))
def test_enumeration_counts(spec):
    t = chc.parse_fixture_spec(spec)
    m, _ = dualize(t)
    trees = enumerate_proper_trees(m, t)
    assert len(trees) == PROPER_TREE_COUNTS[spec]
    assert len({tr.key() for tr in trees}) == len(trees)


def test_tetrahedron_trees_are_the_dual_edges(tetra):
    # n - 2 = 2, so every proper tree is a single dual edge, and in the
    # complete dual graph of the tetrahedron all six qualify
    m, _ = dualize(tetra)
    trees = enumerate_proper_trees(m, t=tetra)
    assert {tr.sorted_edges() for tr in trees} == {((u, w),) for u, w in m.edges}


def test_every_enumerated_tree_passes_check(octa):
    m, _ = dualize(octa)
    for tr in enumerate_proper_trees(m, octa):
        assert len(tr.vertices) == 4
        assert len(tr.edges) == 3
        assert check_proper(tr, m, octa).proper


def test_enumeration_order_is_deterministic(cyclic7):
    m, _ = dualize(cyclic7)
    once = [tr.key() for tr in enumerate_proper_trees(m, cyclic7)]
    again = [tr.key() for tr in enumerate_proper_trees(m, cyclic7)]
    threaded = [tr.key() for tr in enumerate_proper_trees(m, cyclic7, threads=4)]
    assert once == again == threaded
    # global order: ascending minimum vertex, then discovery order per seed
    seeds = [k[0][0] for k in once]
    assert seeds == sorted(seeds)


def test_cap_truncates_in_order(grid33):
    m, _ = dualize(grid33)
    full = enumerate_proper_trees(m, grid33)
    head = enumerate_proper_trees(m, grid33, cap=10)
    assert [tr.key() for tr in head] == [tr.key() for tr in full[:10]]
    assert enumerate_proper_trees(m, grid33, cap=0) == []


def test_find_matches_first_enumerated(octa):
    m, _ = dualize(octa)
    res = find_proper_tree(m, octa)
    assert res.verdict == "found"
    assert res.tree.key() == enumerate_proper_trees(m, octa)[0].key()


def test_find_is_thread_invariant(icosa):
    m, _ = dualize(icosa)
    one = find_proper_tree(m, icosa, threads=1)
    four = find_proper_tree(m, icosa, threads=4)
    assert one.verdict == four.verdict == "found"
    assert one.tree.key() == four.tree.key()
    assert one.expansions == four.expansions


def test_budget_exhaustion(octa):
    m, _ = dualize(octa)
    res = find_proper_tree(m, octa, budget=1)
    assert res.verdict == "budget_exceeded"
    assert res.tree is None
    with pytest.raises(BudgetExceeded) as info:
        enumerate_proper_trees(m, octa, budget=5)
    # whatever was found before the cutoff rides along
    partial = info.value.partial
    full = enumerate_proper_trees(m, octa)
    assert [tr.key() for tr in partial] == [tr.key() for tr in full[:len(partial)]]


def test_budget_verdict_is_thread_invariant(grid33):
    m, _ = dualize(grid33)
    for budget in (0, 17, 193, 100000):
        seq = _outcome(m, grid33, budget, threads=1)
        par = _outcome(m, grid33, budget, threads=4)
        assert seq == par, f"budget {budget}"


def _outcome(m, t, budget, threads):
    try:
        trees = enumerate_proper_trees(m, t, budget=budget, threads=threads)
        return ("done", [tr.key() for tr in trees])
    except BudgetExceeded as exc:
        return ("exceeded", [tr.key() for tr in exc.partial])


# --- check_proper on handmade candidates -----------------------------------


def test_arc_spanning_a_whole_face_is_rejected(octa):
    # the walk around vertex 1 is a quadrilateral; a path through all four
    # of its dual vertices keeps the arc contiguous but makes it too long
    m, _ = dualize(octa)
    walk = m.face_walks[m.face_ids["1"]]
    a, b, c, d = walk
    tree = CandidateTree.of([a, b, c, d], [_e(a, b), _e(b, c), _e(c, d)])
    verdict = check_proper(tree, m, octa)
    assert not verdict.proper
    kinds = {v.condition for v in verdict.violations}
    assert "arc-length" in kinds
    arc = next(v for v in verdict.violations if v.condition == "arc-length")
    assert arc.face_vertex == "1"


def test_split_arc_is_rejected(octa):
    # a path that leaves a face and comes back puts two separated tree
    # vertices on that face's walk
    m, _ = dualize(octa)
    path = _octa_detour_path(m)
    tree = CandidateTree.of(path, list(zip(path, path[1:])))
    verdict = check_proper(tree, m, octa)
    assert not verdict.proper
    kinds = [v.condition for v in verdict.violations]
    assert "size" in kinds          # five vertices where n - 2 = 4
    assert "boundary-path" in kinds


def _octa_detour_path(m):
    # two dual vertices opposite on some walk, joined by a 4-edge path that
    # avoids the walk's other two vertices
    for walk in m.face_walks:
        a, _, c, _ = walk
        banned = set(walk) - {a, c}
        for x in m.adjacency[a]:
            if x in banned or x == c:
                continue
            for y in m.adjacency[x]:
                if y in banned or y in (a, c):
                    continue
                for z in m.adjacency[y]:
                    if z in banned or z in (a, x, c):
                        continue
                    if c in m.adjacency[z]:
                        return [a, x, y, z, c]
    raise AssertionError("no detour path in this dual map")


def test_wrong_size_alone_is_a_size_violation(octa):
    m, _ = dualize(octa)
    u, w = m.edges[0]
    verdict = check_proper(CandidateTree.of([u, w], [(u, w)]), m, octa)
    assert not verdict.proper
    assert [v.condition for v in verdict.violations] == ["size"]


def test_not_a_tree_variants(tetra, octa):
    m4, _ = dualize(tetra)
    m8, _ = dualize(octa)
    with pytest.raises(NotATree, match="empty"):
        check_proper(CandidateTree.of([], []), m4, tetra)
    with pytest.raises(NotATree, match="not a dual edge"):
        check_proper(CandidateTree.of([0, 3], [(0, 3)]), m8, octa)
    with pytest.raises(NotATree, match="leaves the vertex set"):
        check_proper(CandidateTree.of([0, 1], [_first_edge_at(m8, 2)]), m8, octa)
    with pytest.raises(NotATree, match="edges on"):
        walk = m8.face_walks[0]
        cyc = list(zip(walk, walk[1:] + walk[:1]))
        check_proper(CandidateTree.of(walk, cyc), m8, octa)
    with pytest.raises(NotATree, match="not connected"):
        # a triangle in the complete dual of the tetrahedron plus a stray
        check_proper(CandidateTree.of([0, 1, 2, 3], [(0, 1), (1, 2), (0, 2)]),
                     m4, tetra)
    with pytest.raises(NotATree, match="outside"):
        check_proper(CandidateTree.of([0, 99], [(0, 99)]), m8, octa)


def _e(u, w):
    return (u, w) if u < w else (w, u)


def _first_edge_at(m, u):
    w = m.adjacency[u][0]
    return _e(u, w)
