"""Mellin transforms of GL(n) Whittaker functions: evaluation, shift relations,
meromorphic continuation and residues."""

from .continuation import ResidueSpec, classify_point, continue_t4, numeric_residue
from .errors import GlMellinError
from .mellin import QuadratureConfig, eval_t, t2, t3_closed
from .recurrence import build_recurrence

__version__ = "0.1.0"

__all__ = [
    "QuadratureConfig",
    "ResidueSpec",
    "GlMellinError",
    "build_recurrence",
    "classify_point",
    "continue_t4",
    "eval_t",
    "numeric_residue",
    "t2",
    "t3_closed",
]
