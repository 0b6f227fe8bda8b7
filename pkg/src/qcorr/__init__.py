"""Quantum correlation sets, exact linear elimination and polytope tools."""
from . import chordal, corsets, fme, numkernel, polytope
from .errors import QcorrError

__version__ = "0.1.0"
__all__ = ["QcorrError", "chordal", "corsets", "fme", "numkernel", "polytope", "__version__"]
