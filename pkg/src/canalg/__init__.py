"""Module varieties over canonical algebras: geometry of mod(d) for regular d."""
from .core import CanonicalType, DimVector, TubeParams, ringel_form, a_dim, threshold
from .classify import canonical_presentation, classify

__all__ = [
    "CanonicalType",
    "DimVector",
    "TubeParams",
    "ringel_form",
    "a_dim",
    "threshold",
    "canonical_presentation",
    "classify",
]
