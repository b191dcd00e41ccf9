"""Edge contraction of weighted Coxeter systems and the induced embeddings."""
from .systems import CoxeterSystem, Edge, contract, find_linear_branch, validate
from .coxeter import CoxeterGroup, build_K

__version__ = "0.1.0"

__all__ = [
    "CoxeterSystem",
    "Edge",
    "contract",
    "find_linear_branch",
    "validate",
    "CoxeterGroup",
    "build_K",
]
