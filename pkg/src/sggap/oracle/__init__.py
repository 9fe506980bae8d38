"""Independent check of the decimation sets by direct diagonalization."""

from .check import LEVEL_CAP, OracleReport, cluster, cross_check, hausdorff, oracle_eigenvalues
from .graph import GasketGraph, build_graph, laplacian_matrix, write_edge_list, write_matrix
from .jacobi import HAVE_NUMBA, backend_name, dense_eigenvalues, jacobi_diagonalize, round_robin

__all__ = [
    "GasketGraph",
    "HAVE_NUMBA",
    "LEVEL_CAP",
    "OracleReport",
    "backend_name",
    "build_graph",
    "cluster",
    "cross_check",
    "dense_eigenvalues",
    "hausdorff",
    "jacobi_diagonalize",
    "laplacian_matrix",
    "oracle_eigenvalues",
    "round_robin",
    "write_edge_list",
    "write_matrix",
]
