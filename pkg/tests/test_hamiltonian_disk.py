"""Cycles, disks, and the two directions of the tree-cycle correspondence."""
import pytest

import chc
from chc import (
    ImproperTree,
    NotACycle,
    NotEquivelar,
    NotHamiltonian,
    TooLarge,
    Triangulation,
    VertexCycle,
    brute_force_chc,
    cycle_is_contractible,
    disk_from_tree,
    dualize,
    enumerate_proper_trees,
    find_chc,
    tree_from_cycle,
)
from chc.proper_tree import CandidateTree


def test_cycle_canonical_form():
    base = VertexCycle(["1", "2", "3", "4"])
    assert base.vertices == ("1", "2", "3", "4")
    for rotated in (["3", "4", "1", "2"], ["2", "1", "4", "3"], [4, 3, 2, 1]):
        assert VertexCycle(rotated) == base
    assert VertexCycle(["1", "4", "3", "2"]) == base  # reflection
    assert len({VertexCycle([1, 2, 3, 4]), VertexCycle([1, 2, 4, 3])}) == 2


def test_cycle_canonical_form_uses_string_order():
    c = VertexCycle(["9", "10", "11", "2"])
    assert c.vertices[0] == "10"


def test_cycle_rejects_bad_sequences():
    with pytest.raises(NotACycle):
        VertexCycle(["1", "2"])
    with pytest.raises(NotACycle):
        VertexCycle(["1", "2", "1", "3"])


def test_cycle_edge_set():
    assert VertexCycle([1, 2, 3]).edge_set() == {("1", "2"), ("2", "3"), ("1", "3")}


# --- contractibility --------------------------------------------------------


def test_single_face_bounds_itself(octa):
    ok, witness = cycle_is_contractible(octa, [1, 2, 5])
    assert ok
    assert witness == (0,)
    assert octa.triangles[0] == ("1", "2", "5")


def test_octahedron_equator(octa):
    # the equator separates the two pyramids; the witness is the side
    # holding triangle 0
    ok, witness = cycle_is_contractible(octa, [1, 2, 3, 4])
    assert ok
    assert witness == (0, 2, 4, 6)
    assert all("5" in octa.triangles[i] for i in witness)


def test_nonseparating_cycle_is_not_contractible(cyclic7):
    ok, witness = cycle_is_contractible(cyclic7, [1, 2, 3, 4, 5, 6, 7])
    assert not ok
    assert witness is None


def test_contractibility_needs_real_edges(octa):
    with pytest.raises(NotACycle, match="1-3"):
        cycle_is_contractible(octa, [1, 3, 5])


def test_every_tetrahedron_hamiltonian_cycle_bounds(tetra):
    # on a sphere any Hamiltonian cycle bounds on both sides
    for seq in ([1, 2, 3, 4], [1, 2, 4, 3], [1, 3, 2, 4]):
        ok, witness = cycle_is_contractible(tetra, seq)
        assert ok and len(witness) == 2


# --- disk_from_tree ---------------------------------------------------------


def test_disk_shape(grid33):
    m, _ = dualize(grid33)
    n = len(grid33.vertices)
    for tree in enumerate_proper_trees(m, grid33, cap=25):
        disk = disk_from_tree(grid33, m, tree)
        assert disk.face_indices == tuple(sorted(tree.vertices))
        assert len(disk.triangles) == n - 2
        assert len(disk.boundary) == n


def test_disk_refuses_improper_tree(octa):
    m, _ = dualize(octa)
    walk = m.face_walks[0]
    a, b, c, d = walk
    def e(u, w):
        return (u, w) if u < w else (w, u)
    tree = CandidateTree.of(walk, [e(a, b), e(b, c), e(c, d)])
    with pytest.raises(ImproperTree):
        disk_from_tree(octa, m, tree)


# --- tree_from_cycle ---------------------------------------------------------


def test_tree_recovery_round_trip(cyclic7):
    m, _ = dualize(cyclic7)
    for tree in enumerate_proper_trees(m, cyclic7, cap=20):
        disk = disk_from_tree(cyclic7, m, tree)
        back = tree_from_cycle(cyclic7, m, disk.boundary)
        assert back is not None
        # the recovered tree spans a disk with the same boundary
        assert disk_from_tree(cyclic7, m, back).boundary == disk.boundary


def test_tree_recovery_on_torus_is_exact(cyclic7):
    # chi = 0 leaves only one disk side, so recovery is the inverse map
    m, _ = dualize(cyclic7)
    tree = enumerate_proper_trees(m, cyclic7, cap=1)[0]
    disk = disk_from_tree(cyclic7, m, tree)
    assert tree_from_cycle(cyclic7, m, disk.boundary).key() == tree.key()


def test_tree_recovery_rejects_short_cycles(octa):
    m, _ = dualize(octa)
    with pytest.raises(NotHamiltonian):
        tree_from_cycle(octa, m, [1, 2, 3, 4])


def test_tree_recovery_returns_none_when_not_contractible(cyclic7):
    m, _ = dualize(cyclic7)
    assert tree_from_cycle(cyclic7, m, [1, 2, 3, 4, 5, 6, 7]) is None


# --- find_chc and the oracle -------------------------------------------------


def test_find_chc_tetrahedron(tetra):
    # first tree is the dual edge {t0, t1}; its two triangles share the
    # edge 1-2, so the disk boundary runs 1,3,2,4
    res = find_chc(tetra)
    assert res.verdict == "found"
    assert res.cycle == VertexCycle([1, 3, 2, 4])
    assert res.disk.face_indices == (0, 1)
    ok, _ = cycle_is_contractible(tetra, res.cycle)
    assert ok


@pytest.mark.parametrize("spec", ["octahedron", "icosahedron", "cyclic7_torus",
                                  "torus_grid:3x4", "torus_grid:4x4"])
def test_find_chc_fixtures(spec):
    t = chc.parse_fixture_spec(spec)
    res = find_chc(t)
    assert res.verdict == "found"
    assert len(res.cycle) == len(t.vertices)
    ok, _ = cycle_is_contractible(t, res.cycle)
    assert ok


def test_find_chc_is_thread_invariant(grid33):
    assert find_chc(grid33, threads=1).cycle == find_chc(grid33, threads=4).cycle


def test_find_chc_requires_equal_degrees():
    t = Triangulation([(1, 2, 3), (1, 2, 4), (1, 3, 4),
                       (2, 3, 5), (2, 4, 5), (3, 4, 5)])
    with pytest.raises(NotEquivelar):
        find_chc(t)


def test_projective_plane_has_a_chc():
    t = Triangulation([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                       (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)])
    res = find_chc(t)
    oracle = brute_force_chc(t)
    assert (res.verdict == "found") == (oracle is not None)
    if oracle is not None:
        ok, _ = cycle_is_contractible(t, oracle)
        assert ok


def test_brute_force_first_hits():
    assert brute_force_chc(chc.generate_fixture("tetrahedron")) == VertexCycle([1, 2, 3, 4])
    assert brute_force_chc(chc.generate_fixture("octahedron")) == VertexCycle(
        [1, 2, 3, 5, 4, 6])
    assert brute_force_chc(chc.generate_fixture("cyclic7_torus")) == VertexCycle(
        [1, 2, 3, 5, 7, 6, 4])


def test_brute_force_refuses_large_input():
    t = chc.generate_fixture("torus_grid", a=4, b=4)
    with pytest.raises(TooLarge):
        brute_force_chc(t)
    with pytest.raises(TooLarge):
        brute_force_chc(chc.generate_fixture("octahedron"), max_vertices=5)


def test_torus_has_as_many_cycles_as_trees(cyclic7):
    # on chi = 0 the disk side is unique, so proper trees and contractible
    # Hamiltonian cycles correspond one to one; both counts are 84 here
    m, _ = dualize(cyclic7)
    trees = enumerate_proper_trees(m, cyclic7)
    cycles = {disk_from_tree(cyclic7, m, tr).boundary for tr in trees}
    assert len(cycles) == len(trees) == 84
    for cyc in sorted(cycles, key=lambda c: c.vertices)[:5]:
        assert tree_from_cycle(cyclic7, m, cyc) is not None
