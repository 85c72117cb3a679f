"""Ground truth for property tests: bounded enumeration and membership."""

from .membership import EnumBudget, InclusionSummary, Oracle, enumerate_type, includes, member

__all__ = ["EnumBudget", "InclusionSummary", "Oracle", "enumerate_type", "includes", "member"]
