"""Exact Cartan involution checks for quaternionic contact structures."""

from ._core import (
    System,
    __version__,
    analyze,
    characters,
    closed_form_counts,
    det3,
    nondegeneracy,
    recurrence,
    telescoping,
    verify,
)

__all__ = [
    "System",
    "__version__",
    "analyze",
    "characters",
    "closed_form_counts",
    "det3",
    "nondegeneracy",
    "recurrence",
    "telescoping",
    "verify",
]
