"""Pseudo-Hermitian Hamiltonians with even PT symmetry.

Biorthonormal eigensystems, metric operators, PT doublets and their Krein
space assembly, checked against a closed-form four-level model.
"""
__version__ = "0.1.0"

from .errors import KreinSpecError, NumericalFailure  # noqa: E402

__all__ = ["KreinSpecError", "NumericalFailure", "__version__"]
