"""Executable truncated l-groups and their Alexandroff unitizations.

Exact rational models, truncation axiom checking, the unitization ``G + Q``
with its order and ring structure, and the classification of when the
unitization of an l-ring is again an l-ring.
"""

from .classify import Classification, ConeEscape, RangeMismatch, classify_unitization
from .lattice import GroupModel, ModelError, RingModel
from .models import (FinSuppModel, GridModel, LexModel, ScalarModel, ZeroMulModel,
                     make_model)
from .orthorep import Multiplier, embed_J, extend_J_tau, stone_function
from .rational import Rat, format_rat, parse_rat, rat
from .truncation import TruncationSpec, check_axioms, const_cap, custom, meet_cap
from .unitization import UnitizationContext, Unitized
from .verdict import PreconditionError, Status, Verdict

__version__ = "0.1.0"

__all__ = [
    "Classification", "ConeEscape", "FinSuppModel", "GridModel", "GroupModel", "LexModel",
    "ModelError", "Multiplier", "PreconditionError", "RangeMismatch", "Rat", "RingModel",
    "ScalarModel", "Status", "TruncationSpec", "UnitizationContext", "Unitized", "Verdict",
    "ZeroMulModel", "check_axioms", "classify_unitization", "const_cap", "custom", "embed_J",
    "extend_J_tau", "format_rat", "make_model", "meet_cap", "parse_rat", "rat",
    "stone_function",
]
