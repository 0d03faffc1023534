"""Tensor-product action combinatorics over simple Lie algebras.

Subpackages cover root-system data, character/tensor computations, action
graphs and their matrices, Dynkin-diagram catalogs with recognition, the
McKay-correspondence pipeline for finite subgroups of SL2(C), and an exact
matrix-module engine for sl2 subalgebra actions.
"""

from .errors import DomainError, InternalConsistencyError

__all__ = ["DomainError", "InternalConsistencyError"]

__version__ = "0.1.0"
