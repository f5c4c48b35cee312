"""Level matrices of rooted trees: spectra, bounds and exhaustive checks."""

from ._core import (
    LevelSpectraError,
    RootedTree,
    analyze,
    characteristic_polynomial,
    check_names,
    enumerate_trees,
    leafstar_cubic_roots,
    level_matrix,
    path_rho_closed_form,
    read_tree,
    rooted_tree_count,
    spectrum,
    verify,
)

__all__ = [
    "LevelSpectraError",
    "RootedTree",
    "analyze",
    "characteristic_polynomial",
    "check_names",
    "enumerate_trees",
    "leafstar_cubic_roots",
    "level_matrix",
    "path_rho_closed_form",
    "read_tree",
    "rooted_tree_count",
    "spectrum",
    "verify",
]

__version__ = "0.1.0"
