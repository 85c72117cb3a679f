"""Type checking for the deterministic core: inference, subtyping and normalization."""

from .betadelta import bd_reduce, bd_step
from .infer import check, check_verdict, check_well_formed, infer
from .normalize import normalize, trails_of, untangle
from .program import ItemReport, ProgramChecker, ProgramReport, Status, check_annotated_program
from .session import Session, TraceNode, Verdict
from .subtype import solve_x, subtype, subtype_verdict, widen

__all__ = [
    "ItemReport",
    "ProgramChecker",
    "ProgramReport",
    "Session",
    "Status",
    "TraceNode",
    "Verdict",
    "bd_reduce",
    "bd_step",
    "check",
    "check_annotated_program",
    "check_verdict",
    "check_well_formed",
    "infer",
    "normalize",
    "solve_x",
    "subtype",
    "subtype_verdict",
    "trails_of",
    "untangle",
    "widen",
]
