"""Exact FSS decompositions of matrix algebras acting on modules."""

from .algebra import BlackBoxAlgebra, build_algebra, radical
from .decomposition import Decomposition, decompose, dimension_bound, gamma_surjective, rewrite, verify_decomposition
from .field import FieldSpec
from .io import InputDocument, read_document
from .linalg import Matrix
from .oracle import exhaustive_simplicity, oracle_dim, perm_group_fixture

__all__ = [
    "BlackBoxAlgebra",
    "Decomposition",
    "FieldSpec",
    "InputDocument",
    "Matrix",
    "build_algebra",
    "decompose",
    "dimension_bound",
    "exhaustive_simplicity",
    "gamma_surjective",
    "oracle_dim",
    "perm_group_fixture",
    "radical",
    "read_document",
    "rewrite",
    "verify_decomposition",
]
