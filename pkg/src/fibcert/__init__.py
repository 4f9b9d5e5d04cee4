"""Exact-arithmetic fibring certificates over truncated Novikov rings."""

__version__ = "0.1.0"

from .errors import (
    EngineError,
    FibcertError,
    HypothesisViolation,
    InconclusiveAtCutoff,
    ParseError,
    StrictGapViolation,
    ValidationError,
)
from .presentation import GroupPresentation, parse_presentation
from .characters import Character, CompatibleOrder, character_from_values
from .quotients import FiniteQuotient, subgroup_presentation
from .groupring import RingElement, reassemble, split_by_cosets
from .chains import build_complex
from .fibring import (
    Status,
    Verdict,
    betti1_abelian,
    character_scan,
    consistency_harness,
    fibred_check,
    ray_samples,
    sikorav_certify,
    verify_certificate,
)
from .catalog import ENTRY_NAMES, get_entry, sigma_membership

__all__ = [
    "__version__",
    "FibcertError",
    "ParseError",
    "EngineError",
    "ValidationError",
    "StrictGapViolation",
    "HypothesisViolation",
    "InconclusiveAtCutoff",
    "GroupPresentation",
    "parse_presentation",
    "Character",
    "CompatibleOrder",
    "character_from_values",
    "FiniteQuotient",
    "subgroup_presentation",
    "RingElement",
    "split_by_cosets",
    "reassemble",
    "build_complex",
    "Status",
    "Verdict",
    "sikorav_certify",
    "verify_certificate",
    "fibred_check",
    "character_scan",
    "ray_samples",
    "betti1_abelian",
    "consistency_harness",
    "ENTRY_NAMES",
    "get_entry",
    "sigma_membership",
]
