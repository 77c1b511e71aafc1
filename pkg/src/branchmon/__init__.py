"""Branching of irreducible representations to reductive subgroups.

Computes restrictions of irreducible modules of simply connected simple
algebraic groups through catalogued embeddings, enumerates the associated
restricted branching monoids, extracts their indecomposable generators, and
certifies freeness against published case tables.
"""

__version__ = "0.1.0"

from .rootsys import GroupShape, SimpleLieType, build_root_system
from .chars import dimension, dominant_character, full_character
from .embed import EmbeddingDescriptor, embedding_from_case
from .branching import BranchingResult, branch, multiplicity, verify_identity
from .monoid import MonoidCertificate, certify, enumerate_gamma, indecomposables, sumset_W
from .tables import instantiate, list_cases

__all__ = [
    "GroupShape",
    "SimpleLieType",
    "build_root_system",
    "dimension",
    "dominant_character",
    "full_character",
    "EmbeddingDescriptor",
    "embedding_from_case",
    "BranchingResult",
    "branch",
    "multiplicity",
    "verify_identity",
    "MonoidCertificate",
    "certify",
    "enumerate_gamma",
    "indecomposables",
    "sumset_W",
    "instantiate",
    "list_cases",
    "__version__",
]
