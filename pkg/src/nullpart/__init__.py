"""Hilbert Nullstellensatz refutations for the Partition problem."""

from .algebra import SparsePolynomial, partition_polynomial
from .certificate import (
    Certificate,
    NotCertifiable,
    PartitionWitness,
    brute_force_partition,
    build_certificate,
    encode,
    verify_certificate,
)
from .matrix import IntMatrix, SingularMatrixError, bareiss_determinant, cramer_component, solve_exact
from .partition_matrix import PartitionMatrix, WeightSet, build, check_properties, decompose
from .subsets import GrevlexIndex, Subset, build_index, grevlex_compare, pair_of, symmetric_difference

__version__ = "0.1.0"
