"""Small-step call-by-value evaluation with recorded non-deterministic choices.

Choice sites are the selection paths the lowering assigns to the same
program positions (``assign_sites``), so a run's ``ChoiceLog`` can be
written straight into a trail for the lowered program.
"""

from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .errors import ChooserExhausted, DialectError, StuckTerm
from .fuel import Fuel
from .syntax import (
    Abs,
    App,
    BaseKind,
    Choose,
    Cons,
    Dialect,
    FreshNames,
    Match,
    Fix,
    Nil,
    Path,
    Sel,
    Term,
    TrailLit,
    Unpack,
    Var,
    all_names,
    dialect_violation,
    path_of,
    select_chain,
    subst,
    subst_many,
)
from . import trail as trails
from .values import is_list_value, is_value, list_values

logger = logging.getLogger(__name__)


# --- choice log ------------------------------------------------------------


@dataclass(frozen=True)
class ChoiceEntry:
    """One choose reduction: site path, requested base type, chosen value."""
    path: Path
    base: BaseKind
    value: Term


@dataclass
class ChoiceLog:
    entries: list[ChoiceEntry] = field(default_factory=list)
    tree: trails.Trail = trails.EMPTY

    def append(self, entry: ChoiceEntry) -> None:
        self.entries.append(entry)
        self.tree = trails.update(self.tree, entry.path, trails.Leaf(entry.base, entry.value))

    def occupied(self, path: Path) -> bool:
        """Whether ``path`` equals, extends or prefixes an already logged site."""
        logged = {entry.path for entry in self.entries}
        if any(path[:k] in logged for k in range(len(path) + 1)):
            return True
        return not isinstance(trails.select(self.tree, path), trails.Empty)

    def replay(self, base: BaseKind, path: Path) -> Term:
        """What the lowered program reads at an occupied site."""
        return trails.unpack(base, trails.select(self.tree, path))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[ChoiceEntry]:
        return iter(self.entries)


# --- choosers --------------------------------------------------------------


class Chooser(ABC):
    """Source of values for ``choose[B]``; values must be closed and fit ``B``."""

    @abstractmethod
    def choose(self, base: BaseKind, path: Path) -> Term:
        ...


class SeededChooser(Chooser):
    """Random first-order values of bounded depth; reproducible from the seed."""

    def __init__(self, seed: int = 0, max_depth: int = 3):
        if max_depth < 0:
            raise ValueError(f"max_depth must be non-negative, got {max_depth}")
        self.seed = seed
        self.max_depth = max_depth
        self._rng = random.Random(seed)

    def _value(self, depth: int) -> Term:
        if depth == 0 or self._rng.random() < 0.4:
            return Nil()
        return Cons(self._value(depth - 1), self._value(depth - 1))

    def choose(self, base: BaseKind, path: Path) -> Term:
        # lambdas are never chosen, so Top draws lists too
        return self._value(self.max_depth)


class ScriptedChooser(Chooser):
    """Replays a fixed sequence of values."""

    def __init__(self, values: Sequence[Term]):
        self.values = list(values)
        self._position = 0

    def choose(self, base: BaseKind, path: Path) -> Term:
        if self._position >= len(self.values):
            raise ChooserExhausted(
                f"script has {len(self.values)} value(s) but more choices were requested"
            )
        value = self.values[self._position]
        self._position += 1
        if value.fv or not is_value(value):
            raise ValueError(f"scripted choice {value} is not a closed value")
        if base is BaseKind.LIST and not is_list_value(value):
            raise ValueError(f"scripted choice {value} is not a list value")
        return value

    @property
    def consumed(self) -> int:
        return self._position


class EnumeratingChooser(Chooser):
    """Odometer over bounded first-order values; ``advance`` moves to the next run."""

    def __init__(self, max_value_size: int = 2):
        self.values = list_values(max_value_size)
        self._digits: list[int] = []
        self._position = 0

    def choose(self, base: BaseKind, path: Path) -> Term:
        if self._position == len(self._digits):
            self._digits.append(0)
        value = self.values[self._digits[self._position]]
        self._position += 1
        return value

    def advance(self) -> bool:
        """Prepare the next combination; False once every run has been seen."""
        del self._digits[self._position :]
        self._position = 0
        while self._digits and self._digits[-1] == len(self.values) - 1:
            self._digits.pop()
        if not self._digits:
            return False
        self._digits[-1] += 1
        return True


class _NoChoices(Chooser):
    def choose(self, base: BaseKind, path: Path) -> Term:
        raise DialectError("choose[...] cannot be evaluated here")


# --- choice sites ----------------------------------------------------------


def assign_sites(term: Term, root: Term, names: FreshNames) -> Term:
    """Annotate application, choice and abstraction nodes with lowering positions."""
    match term:
        case Abs(binder, annot, body):
            z = names.fresh("z")
            return Abs(binder, annot, assign_sites(body, Var(z), names), trail=z)
        case App(fn, arg):
            return App(
                assign_sites(fn, Sel(root, 1), names),
                assign_sites(arg, Sel(root, 2), names),
                site=Sel(root, 3),
            )
        case Cons(head, tail):
            return Cons(
                assign_sites(head, Sel(root, 1), names), assign_sites(tail, Sel(root, 2), names)
            )
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            return Match(
                assign_sites(scrutinee, Sel(root, 1), names),
                assign_sites(nil_case, Sel(root, 2), names),
                hd,
                tl,
                assign_sites(cons_case, Sel(root, 3), names),
            )
        case Fix(bound, binder, annot, body, default):
            return Fix(
                bound,
                binder,
                annot,
                assign_sites(body, Sel(root, 1), names),
                assign_sites(default, Sel(root, 2), names),
            )
        case Choose(base):
            return Choose(base, site=root)
    return term


def _rebase(site: Optional[Term], z: str, chain: Term) -> Optional[Term]:
    if site is None:
        return None
    root, path = path_of(site)
    if isinstance(root, Var) and root.name == z:
        return select_chain(chain, path)
    return site


def instantiate_sites(term: Term, z: str, chain: Term) -> Term:
    """Re-root sites of trail variable ``z`` at ``chain`` (the call site's trail)."""
    match term:
        case App(fn, arg):
            return App(
                instantiate_sites(fn, z, chain),
                instantiate_sites(arg, z, chain),
                site=_rebase(term.site, z, chain),
            )
        case Choose(base):
            return Choose(base, site=_rebase(term.site, z, chain))
        case Cons(head, tail):
            return Cons(instantiate_sites(head, z, chain), instantiate_sites(tail, z, chain))
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            return Match(
                instantiate_sites(scrutinee, z, chain),
                instantiate_sites(nil_case, z, chain),
                hd,
                tl,
                instantiate_sites(cons_case, z, chain),
            )
        case Fix(bound, binder, annot, body, default):
            return Fix(
                bound,
                binder,
                annot,
                instantiate_sites(body, z, chain),
                instantiate_sites(default, z, chain),
            )
    # nested abstractions only use their own trail
    return term


# --- reduction -------------------------------------------------------------


class Reducer:
    """One leftmost-innermost reduction step within the evaluation contexts.

    ``reduce`` returns None when no redex exists; whether that means a value
    or a stuck term is for the caller to decide. Subclasses may unfold
    variables through ``expand_var``.
    """

    def __init__(self, chooser: Optional[Chooser] = None, log: Optional[ChoiceLog] = None):
        self.chooser = chooser or _NoChoices()
        self.log = log
        self.last_entry: Optional[ChoiceEntry] = None

    def expand_var(self, name: str) -> Optional[Term]:
        return None

    def _choose(self, term: Choose) -> Term:
        path: Path = ()
        if term.site is not None:
            _, path = path_of(term.site)
        if self.log is not None and self.log.occupied(path):
            value = self.log.replay(term.base, path)
            logger.debug("replayed choice at %s", trails.format_path(path))
            return value
        value = self.chooser.choose(term.base, path)
        entry = ChoiceEntry(path, term.base, value)
        self.last_entry = entry
        if self.log is not None:
            self.log.append(entry)
        return value

    def reduce(self, term: Term) -> Optional[Term]:
        match term:
            case Var(name):
                return self.expand_var(name)
            case Abs() | Nil() | TrailLit():
                return None
            case Cons(head, tail):
                reduced = self.reduce(head)
                if reduced is not None:
                    return Cons(reduced, tail)
                if not is_value(head):
                    return None
                reduced = self.reduce(tail)
                if reduced is not None:
                    return Cons(head, reduced)
                return None
            case App(fn, arg):
                reduced = self.reduce(fn)
                if reduced is not None:
                    return App(reduced, arg, site=term.site)
                if not is_value(fn):
                    return None
                reduced = self.reduce(arg)
                if reduced is not None:
                    return App(fn, reduced, site=term.site)
                if isinstance(fn, Abs) and is_value(arg):
                    body = fn.body
                    if fn.trail is not None and term.site is not None:
                        body = instantiate_sites(body, fn.trail, term.site)
                    return subst(body, fn.binder, arg)
                return None
            case Match(scrutinee, nil_case, hd, tl, cons_case):
                reduced = self.reduce(scrutinee)
                if reduced is not None:
                    return Match(reduced, nil_case, hd, tl, cons_case)
                if isinstance(scrutinee, Nil):
                    return nil_case
                if isinstance(scrutinee, Cons) and is_value(scrutinee):
                    return subst_many(cons_case, {hd: scrutinee.head, tl: scrutinee.tail})
                return None
            case Fix(bound, binder, annot, body, default):
                if bound == 0:
                    return default
                return subst(body, binder, Fix(bound - 1, binder, annot, body, default))
            case Choose():
                return self._choose(term)
            case Sel(target, index):
                reduced = self.reduce(target)
                if reduced is not None:
                    return Sel(reduced, index)
                if isinstance(target, TrailLit):
                    return TrailLit(trails.select(target.tree, (index,)))
                return None
            case Unpack(base, arg):
                reduced = self.reduce(arg)
                if reduced is not None:
                    return Unpack(base, reduced)
                if isinstance(arg, TrailLit):
                    return trails.unpack(base, arg.tree)
                return None
        raise TypeError(f"not a term: {term!r}")


def _stuck_reason(term: Term) -> str:
    match term:
        case App(fn, _):
            return "application of a non-function" if is_value(fn) else "stuck function position"
        case Match():
            return "match on a non-list"
        case Sel():
            return "selection from a non-trail"
        case Unpack():
            return "unpack of a non-trail"
    return "no reduction rule applies"


def _find_stuck(term: Term) -> Term:
    """Innermost sub-term responsible for a stuck state, for diagnostics."""
    for child in (getattr(term, attr, None) for attr in ("fn", "arg", "head", "tail", "scrutinee", "target")):
        if isinstance(child, Term) and not is_value(child):
            return _find_stuck(child)
    return term


def step(
    term: Term, chooser: Optional[Chooser] = None, log: Optional[ChoiceLog] = None
) -> Optional[tuple[Term, Optional[ChoiceEntry]]]:
    """One reduction step; None when ``term`` is a value.

    Raises StuckTerm when ``term`` is neither a value nor reducible.
    """
    reducer = Reducer(chooser, log)
    reduced = reducer.reduce(term)
    if reduced is None:
        if is_value(term):
            return None
        culprit = _find_stuck(term)
        raise StuckTerm(culprit, _stuck_reason(culprit))
    return reduced, reducer.last_entry


class EvalResult(NamedTuple):
    value: Term
    log: ChoiceLog


def _run(term: Term, reducer: Reducer, fuel: Fuel) -> Term:
    while True:
        reduced = reducer.reduce(term)
        if reduced is None:
            if is_value(term):
                return term
            culprit = _find_stuck(term)
            raise StuckTerm(culprit, _stuck_reason(culprit))
        fuel.consume()
        term = reduced


def evaluate(
    term: Term, chooser: Optional[Chooser] = None, fuel: Union[int, Fuel] = 10000
) -> EvalResult:
    """Evaluate to a value, recording every choice made along the way."""
    fuel = Fuel.coerce(fuel)
    names = FreshNames(all_names(term))
    root = Var(names.fresh("z"))
    annotated = assign_sites(term, root, names)
    log = ChoiceLog()
    value = _run(annotated, Reducer(chooser or SeededChooser(), log), fuel)
    logger.debug("evaluated in %d steps with %d choices", fuel.used, len(log))
    return EvalResult(value, log)


def evaluate_core(term: Term, fuel: Union[int, Fuel] = 10000) -> Term:
    """Deterministic evaluation of a core term (trail literals included)."""
    offending = dialect_violation(term, Dialect.CORE)
    if offending is not None:
        raise DialectError(f"not a core term: contains {offending}")
    return _run(term, Reducer(), Fuel.coerce(fuel))


def explore(
    term: Term,
    max_value_size: int = 2,
    fuel: int = 10000,
    limit: int = 1000,
) -> list[EvalResult]:
    """Outcomes of every run choosing among values up to ``max_value_size``."""
    chooser = EnumeratingChooser(max_value_size)
    results: list[EvalResult] = []
    while len(results) < limit:
        results.append(evaluate(term, chooser, fuel))
        if not chooser.advance():
            break
    return results
