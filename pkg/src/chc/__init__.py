"""Contractible Hamiltonian cycles in equivelar triangulated surfaces.

The pipeline: validate a triangulated closed surface, build its dual
polyhedral map, search the dual for a proper tree on n - 2 vertices, and
read the contractible Hamiltonian cycle off the boundary of the disk the
tree spans. A brute-force oracle for small inputs cross-checks the whole
construction.
"""

from .complex_core import (
    FIXTURE_FAMILIES,
    SurfaceReport,
    Triangulation,
    equivelar_degree,
    euler_characteristic,
    generate_fixture,
    parse_fixture_spec,
    validate_surface,
)
from .dual_map import DualCorrespondence, PolyhedralMap, dualize, face_walk
from .errors import (
    BadParams,
    BudgetExceeded,
    ChcError,
    DegenerateTriangle,
    DisagreementDetected,
    Disconnected,
    FormatError,
    ImproperTree,
    InternalInconsistency,
    NotACycle,
    NotATree,
    NotClosed,
    NotEquivelar,
    NotHamiltonian,
    NotManifold,
    TooLarge,
    UnknownFamily,
    UnknownVertex,
)
from .hamiltonian_disk import (
    ORACLE_LIMIT,
    CycleSearchResult,
    TriangulatedDisk,
    VertexCycle,
    brute_force_chc,
    cycle_is_contractible,
    disk_from_tree,
    find_chc,
    tree_from_cycle,
)
from .proper_tree import (
    DEFAULT_BUDGET,
    CandidateTree,
    ProperVerdict,
    TreeSearchResult,
    Violation,
    check_proper,
    enumerate_proper_trees,
    find_proper_tree,
)
from .cli import census

__version__ = "0.1.0"
