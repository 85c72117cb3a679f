"""Bounded membership oracle: which closed values inhabit a type.

Verdicts are three-valued internally (True, False, None for undecided). A
None never turns into True or False on its own; public entry points raise
``Undecided`` instead.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from ..checker.betadelta import bd_reduce
from ..checker.normalize import selection_occurrences
from ..core import trail as trails
from ..core.errors import ElamError, NotEnumerable, Undecided
from ..core.syntax import (
    EMPTY_CONTEXT,
    Abs,
    App,
    Base,
    BaseKind,
    Cons,
    ConsT,
    Exists,
    MatchT,
    Nil,
    Pi,
    Singleton,
    Term,
    TrailLit,
    Type,
    alpha_eq,
    subst,
    subst_many,
)
from ..core.values import is_first_order, is_list_value, is_value, list_values, value_size

logger = logging.getLogger(__name__)

Verdict3 = Optional[bool]

_REDUCTION_FUEL = 2000


@dataclass(frozen=True)
class EnumBudget:
    """Bounds on every enumeration the oracle performs."""

    max_value_size: int = 4
    max_trail_depth: int = 1
    max_exists_width: int = 10000

    def __post_init__(self):
        for name in ("max_value_size", "max_trail_depth", "max_exists_width"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1, got {getattr(self, name)}")


@dataclass
class InclusionSummary:
    """Outcome of comparing two types over the enumerated members of the first."""

    checked: int = 0
    skipped: int = 0
    counterexamples: list[Term] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _and(verdicts: Iterable[Verdict3]) -> Verdict3:
    result: Verdict3 = True
    for verdict in verdicts:
        if verdict is False:
            return False
        if verdict is None:
            result = None
    return result


def _or(verdicts: Iterable[Verdict3]) -> Verdict3:
    result: Verdict3 = False
    for verdict in verdicts:
        if verdict is True:
            return True
        if verdict is None:
            result = None
    return result


def _reduce_closed(t: Term) -> Optional[Term]:
    """Value of a closed term, or None when it is open, stuck or too slow."""
    if t.fv:
        return None
    try:
        reduced = bd_reduce(EMPTY_CONTEXT, t, _REDUCTION_FUEL)
    except ElamError as exc:
        logger.debug("cannot reduce %s: %s", t, exc)
        return None
    return reduced if is_value(reduced) else None


class Oracle:
    """Enumeration and membership under one budget."""

    def __init__(self, budget: Optional[EnumBudget] = None):
        self.budget = budget or EnumBudget()
        self._lists = list_values(self.budget.max_value_size)

    # --- trails ------------------------------------------------------------

    def _leaves(self) -> list[trails.Trail]:
        return [trails.EMPTY] + [
            trails.Leaf(tag, value) for tag in (BaseKind.TOP, BaseKind.LIST) for value in self._lists
        ]

    def all_trails(self, depth: Optional[int] = None) -> Iterator[trails.Trail]:
        """Every trail of depth at most ``depth`` over the enumerated list values."""
        depth = self.budget.max_trail_depth if depth is None else depth
        yield from self._leaves()
        if depth > 0:
            smaller = list(self.all_trails(depth - 1))
            for children in itertools.product(smaller, repeat=3):
                if all(isinstance(child, trails.Empty) for child in children):
                    continue
                yield trails.Node(*children)

    def _supported_trails(self, x: str, body: Type) -> tuple[Iterator[trails.Trail], bool]:
        """Trails filled only at the positions ``body`` selects from ``x``.

        The flag is True when the enumeration is exact: every selection is
        unpacked and no used position is a prefix of another.
        """
        found = list(selection_occurrences(body, x))
        paths = sorted({path for path, _ in found})
        exact = all(tag is not None for _, tag in found) and not any(
            p != q and q[: len(p)] == p for p in paths for q in paths
        )
        positions = [p for p in paths if not any(q != p and q[: len(p)] == p for q in paths)]

        def generate() -> Iterator[trails.Trail]:
            for leaves in itertools.product(self._leaves(), repeat=len(positions)):
                tree: trails.Trail = trails.EMPTY
                for path, leaf in zip(positions, leaves):
                    if not isinstance(leaf, trails.Empty):
                        tree = trails.update(tree, path, leaf)
                yield tree

        return generate(), exact

    # --- enumeration ---------------------------------------------------------

    def _dedupe(self, values: Iterable[Term]) -> list[Term]:
        seen, unique = set(), []
        for value in values:
            key = value.canon
            if key not in seen:
                seen.add(key)
                unique.append(value)
        return unique

    def enumerate(self, ty: Type) -> list[Term]:
        """Closed first-order members of ``ty`` up to the value-size bound."""
        return self._dedupe(self._enumerate(ty))

    def _enumerate(self, ty: Type) -> Iterator[Term]:
        size = self.budget.max_value_size
        match ty:
            case Base(BaseKind.TOP) | Base(BaseKind.LIST):
                # lambdas are left out of Top on purpose
                yield from self._lists
            case Base(BaseKind.TRAIL):
                yield from (TrailLit(tree) for tree in self.all_trails())
            case Singleton(term, underlying):
                value = _reduce_closed(term)
                if value is None or not is_first_order(value):
                    raise Undecided(f"cannot enumerate {ty}: {term} has no first-order value")
                verdict = self._member(value, underlying)
                if verdict is None:
                    raise Undecided(f"cannot decide whether {value} inhabits {underlying}")
                if verdict and value_size(value) <= size:
                    yield value
            case ConsT(head, tail):
                tails = [t for t in self.enumerate(tail) if is_first_order(t)]
                for h in self.enumerate(head):
                    for t in tails:
                        candidate = Cons(h, t)
                        if value_size(candidate) <= size:
                            yield candidate
            case MatchT(scrutinee, nil_type, hd, tl, cons_type):
                value = _reduce_closed(scrutinee)
                if isinstance(value, Nil):
                    yield from self._enumerate(nil_type)
                elif isinstance(value, Cons):
                    yield from self._enumerate(subst_many(cons_type, {hd: value.head, tl: value.tail}))
                else:
                    raise Undecided(f"cannot enumerate {ty}: scrutinee {scrutinee} is not a closed list")
            case Exists(binder, domain, body):
                for witness in self._witnesses(binder, domain, body)[0]:
                    yield from self._enumerate(subst(body, binder, witness))
            case Pi():
                raise NotEnumerable(f"cannot enumerate the function type {ty}")
            case _:
                raise TypeError(f"not a type: {ty!r}")

    def _witnesses(self, binder: str, domain: Type, body: Type) -> tuple[list[Term], bool]:
        """Candidate instantiations for an existential, capped; flag says the list is complete."""
        width = self.budget.max_exists_width
        if domain == Base(BaseKind.TRAIL):
            generated, exact = self._supported_trails(binder, body)
            candidates = [TrailLit(tree) for tree in itertools.islice(generated, width + 1)]
        else:
            candidates, exact = self.enumerate(domain), True
        if len(candidates) > width:
            logger.debug("existential over %s capped at %d witnesses", domain, width)
            return candidates[:width], False
        return candidates, exact

    # --- membership ----------------------------------------------------------

    def _member(self, value: Term, ty: Type) -> Verdict3:
        match ty:
            case Base(BaseKind.TOP):
                return True
            case Base(BaseKind.LIST):
                # shape only: elements may be functions
                return is_list_value(value)
            case Base(BaseKind.TRAIL):
                return isinstance(value, TrailLit)
            case Singleton(term, underlying):
                reduced = _reduce_closed(term)
                if reduced is None:
                    return None
                if not alpha_eq(reduced, value):
                    if is_first_order(reduced) and is_first_order(value):
                        return False
                    # function equality is out of reach
                    return None
                return self._member(value, underlying)
            case ConsT(head, tail):
                if not isinstance(value, Cons):
                    return False if is_first_order(value) else None
                return _and((self._member(value.head, head), self._member(value.tail, tail)))
            case MatchT(scrutinee, nil_type, hd, tl, cons_type):
                reduced = _reduce_closed(scrutinee)
                if isinstance(reduced, Nil):
                    return self._member(value, nil_type)
                if isinstance(reduced, Cons):
                    branch = subst_many(cons_type, {hd: reduced.head, tl: reduced.tail})
                    return self._member(value, branch)
                return None
            case Pi(binder, domain, codomain):
                if not isinstance(value, Abs):
                    return False
                return self._member_function(value, binder, domain, codomain)
            case Exists(binder, domain, body):
                try:
                    candidates, exact = self._witnesses(binder, domain, body)
                except (NotEnumerable, Undecided):
                    return None
                verdict = _or(self._member(value, subst(body, binder, w)) for w in candidates)
                if verdict is False and not exact:
                    return None
                return verdict
        raise TypeError(f"not a type: {ty!r}")

    def _member_function(self, fn: Abs, binder: str, domain: Type, codomain: Type) -> Verdict3:
        try:
            arguments = self.enumerate(domain)
        except (NotEnumerable, Undecided):
            return None
        verdicts = []
        for argument in arguments:
            result = _reduce_closed(App(fn, argument))
            if result is None:
                verdicts.append(None)
                continue
            verdicts.append(self._member(result, subst(codomain, binder, argument)))
        return _and(verdicts)

    def member(self, value: Term, ty: Type) -> bool:
        verdict = self._member(value, ty)
        if verdict is None:
            raise Undecided(f"cannot decide whether {value} inhabits {ty}")
        return verdict

    def includes(self, sub: Type, sup: Type) -> InclusionSummary:
        """Check every enumerated member of ``sub`` against ``sup``."""
        summary = InclusionSummary()
        for value in self.enumerate(sub):
            verdict = self._member(value, sup)
            if verdict is None:
                summary.skipped += 1
            elif verdict:
                summary.checked += 1
            else:
                summary.counterexamples.append(value)
        return summary


def enumerate_type(ty: Type, budget: Optional[EnumBudget] = None) -> list[Term]:
    """Closed values of ``ty`` within ``budget``; raises NotEnumerable or Undecided."""
    return Oracle(budget).enumerate(ty)


def member(value: Term, ty: Type, budget: Optional[EnumBudget] = None) -> bool:
    """Whether ``value`` inhabits ``ty``; raises Undecided when the budget cannot tell."""
    return Oracle(budget).member(value, ty)


def includes(sub: Type, sup: Type, budget: Optional[EnumBudget] = None) -> InclusionSummary:
    return Oracle(budget).includes(sub, sup)
