"""Moebius inversion and Shapley values on weighted directed acyclic multigraphs."""

from .algebra import (
    ValueFunction,
    convolve,
    inverse_moebius,
    moebius_function,
    moebius_transform,
    restrict_to_ancestrally_closed,
    unanimity,
)
from .builders import (
    CoalitionPartition,
    IsingSpec,
    PosetSpec,
    coalition_damg,
    hasse_damg,
    ising_game,
    lattice_damg,
    power_set_damg,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    Damg,
    Edge,
    build_damg,
    enumerate_paths,
    is_horizontal_subset,
    path_counts,
    relations,
    root_path_totals,
)
from .pathalgebra import PathAlgebraElement
from .projection import (
    ProjectionResult,
    drop_weak,
    is_admissible,
    is_restricted_admissible,
    null_elements,
    project_edge_weights,
    project_onto,
    project_subset,
    project_vertex,
    weak_elements,
)
from .scalars import Vector
from .shapley import (
    Attribution,
    chain_shapley_comparator,
    classic_shapley_oracle,
    shapley_path_uniform,
    shapley_recursive,
    shapley_total_weights,
    shapley_weighted,
)
from .weights import (
    EdgeWeights,
    ProjectionKernel,
    RootWeights,
    edge_uniform_kernel,
    extend_root_weights,
    induced_kernel,
    kernel_total_weights,
    path_uniform_kernel,
    total_path_weights,
    verify_automorphism,
)

__version__ = "0.1.0"
