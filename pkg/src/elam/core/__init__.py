"""Core calculus: syntax, trails, evaluation and lowering."""

from .errors import (
    ChooserExhausted,
    DialectError,
    ElamError,
    InferFailure,
    NotEnumerable,
    OutOfFuel,
    ParseError,
    PrefixClash,
    StuckTerm,
    Undecided,
)
from .evaluator import (
    ChoiceEntry,
    ChoiceLog,
    Chooser,
    EnumeratingChooser,
    EvalResult,
    ScriptedChooser,
    SeededChooser,
    assign_sites,
    evaluate,
    evaluate_core,
    explore,
    step,
)
from .fuel import Fuel
from .lower import lower_program, lower_term, lower_type, lower_value
from .syntax import (
    EMPTY_CONTEXT,
    LIST,
    TOP,
    TRAIL,
    Abs,
    App,
    Base,
    BaseKind,
    Choose,
    Cons,
    ConsT,
    Context,
    Dialect,
    Exists,
    Fix,
    FreshNames,
    Match,
    MatchT,
    Nil,
    Pi,
    Sel,
    Singleton,
    Term,
    TrailLit,
    Type,
    Unpack,
    Var,
    alpha_eq,
    check_dialect,
    free_vars,
    path_of,
    select_chain,
    subst,
    subst_many,
)
from .values import is_value, list_values

__all__ = [
    "Abs",
    "App",
    "Base",
    "BaseKind",
    "ChoiceEntry",
    "ChoiceLog",
    "Chooser",
    "ChooserExhausted",
    "Choose",
    "Cons",
    "ConsT",
    "Context",
    "Dialect",
    "DialectError",
    "EMPTY_CONTEXT",
    "ElamError",
    "EnumeratingChooser",
    "EvalResult",
    "Exists",
    "Fix",
    "FreshNames",
    "Fuel",
    "InferFailure",
    "LIST",
    "Match",
    "MatchT",
    "Nil",
    "NotEnumerable",
    "OutOfFuel",
    "ParseError",
    "Pi",
    "PrefixClash",
    "ScriptedChooser",
    "SeededChooser",
    "Sel",
    "Singleton",
    "StuckTerm",
    "TOP",
    "TRAIL",
    "Term",
    "TrailLit",
    "Type",
    "Undecided",
    "Unpack",
    "Var",
    "alpha_eq",
    "assign_sites",
    "check_dialect",
    "evaluate",
    "evaluate_core",
    "explore",
    "free_vars",
    "is_value",
    "list_values",
    "lower_program",
    "lower_term",
    "lower_type",
    "lower_value",
    "path_of",
    "select_chain",
    "step",
    "subst",
    "subst_many",
]
