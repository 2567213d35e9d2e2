"""Exact chains, facet graphs and connectivity checks for simplicial and cell complexes over GF(p)."""
from ._kernels import BACKEND
from .cell_complex import (
    CellPoset,
    cell_cycle_check,
    cell_facet_graph,
    is_compatible,
    mixed_connectivity_check,
    open_face_removal,
    poset_from_complex,
    validate_axioms,
)
from .collapse import collapse_small_set, express_cycle_as_boundary, greedy_collapse, replay
from .complex import EMPTY, Chain, Complex, boundary, boundary_matrix, closure, coboundary, complex_from_faces
from .facet_graph import (
    FacetGraph,
    build_facet_graph,
    components_after_removal,
    connected_after_mixed_removal,
    hypersimplex_graph,
    vertex_connectivity,
)
from .field import FieldContext, NonPrimeModulus, field_context
from .generators import (
    complete_complex,
    cross_polytope_cycle,
    generate,
    random_simple_cycle,
    simplex_boundary_cycle,
    torus_cycle,
)
from .linalg import SparseMatrix, betti_reduced, cycle_space_dim, kernel_basis, rank, solve
from .structures import (
    Hypertree,
    cap,
    dual,
    enumerate_circuits,
    enumerate_hypercuts,
    fundamental_cycle,
    hypertree_greedy,
    is_hypercut,
    is_simple_cycle,
    perturbed_hypertree,
    star_hypercut,
    star_hypertree,
)
from .verify import CheckReport, CheckSpec, run_check

__version__ = "0.1.0"
