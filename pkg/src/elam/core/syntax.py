"""Terms, types and contexts shared by the surface and core calculi.

Both calculi use one named AST. ``Choose`` only appears in surface terms;
``Sel``, ``Unpack`` and ``TrailLit`` only in core terms (see ``check_dialect``).
All nodes are immutable; ``free_vars`` is cached per node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, Optional, Union


class BaseKind(Enum):
    """Base types of both calculi."""
    TOP = "Top"
    LIST = "List"
    TRAIL = "Trail"


class Dialect(Enum):
    """The two calculi sharing this AST."""
    SURFACE = "surface"
    CORE = "core"


Path = tuple[int, ...]


class _Node:
    """Behavior shared by every term and type node."""

    @cached_property
    def fv(self) -> frozenset[str]:
        return _compute_fv(self)

    @cached_property
    def canon(self):
        """Hashable de Bruijn key; equal keys mean alpha-equivalent nodes."""
        return _canon(self, {}, 0)

    def __str__(self) -> str:
        from ..frontend.printer import print_node

        return print_node(self)


class Term(_Node):
    """Marker base class for terms."""


class Type(_Node):
    """Marker base class for types."""


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Abs(Term):
    binder: str
    annot: Type
    body: Term
    # trail parameter the lowering would bind here; evaluator bookkeeping only
    trail: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term
    # selection chain passed as the callee's trail (p.3 of the lowering)
    site: Optional[Term] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Nil(Term):
    pass


@dataclass(frozen=True)
class Cons(Term):
    head: Term
    tail: Term


@dataclass(frozen=True)
class Match(Term):
    scrutinee: Term
    nil_case: Term
    hd_binder: str
    tl_binder: str
    cons_case: Term


@dataclass(frozen=True)
class Fix(Term):
    bound: int
    binder: str
    annot: Type
    body: Term
    default: Term

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError(f"fix bound must be a natural number, got {self.bound}")


@dataclass(frozen=True)
class Choose(Term):
    base: BaseKind
    site: Optional[Term] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sel(Term):
    target: Term
    index: int

    def __post_init__(self):
        if self.index not in (1, 2, 3):
            raise ValueError(f"selection index must be 1, 2 or 3, got {self.index}")


@dataclass(frozen=True)
class Unpack(Term):
    base: BaseKind
    arg: Term


@dataclass(frozen=True)
class TrailLit(Term):
    tree: object  # elam.core.trail.Trail; kept untyped to avoid an import cycle


# --- types -----------------------------------------------------------------


@dataclass(frozen=True)
class Base(Type):
    kind: BaseKind


@dataclass(frozen=True)
class Singleton(Type):
    term: Term
    underlying: Type

    def __post_init__(self):
        # {t}_{ {u}_U } collapses to {t}_U; the inner one is already collapsed
        if isinstance(self.underlying, Singleton):
            object.__setattr__(self, "underlying", self.underlying.underlying)


@dataclass(frozen=True)
class Pi(Type):
    binder: str
    domain: Type
    codomain: Type


@dataclass(frozen=True)
class ConsT(Type):
    head: Type
    tail: Type


@dataclass(frozen=True)
class MatchT(Type):
    scrutinee: Term
    nil_type: Type
    hd_binder: str
    tl_binder: str
    cons_type: Type


@dataclass(frozen=True)
class Exists(Type):
    binder: str
    domain: Type
    body: Type


Node = Union[Term, Type]

TOP = Base(BaseKind.TOP)
LIST = Base(BaseKind.LIST)
TRAIL = Base(BaseKind.TRAIL)


def base_type(kind: BaseKind) -> Base:
    return {BaseKind.TOP: TOP, BaseKind.LIST: LIST, BaseKind.TRAIL: TRAIL}[kind]


# --- traversal -------------------------------------------------------------


def children(node: Node) -> Iterator[Node]:
    """Immediate sub-terms and sub-types, in source order."""
    match node:
        case Abs(_, annot, body):
            yield annot
            yield body
        case App(fn, arg):
            yield fn
            yield arg
        case Cons(head, tail) | ConsT(head, tail):
            yield head
            yield tail
        case Match(scrutinee, nil_case, _, _, cons_case):
            yield scrutinee
            yield nil_case
            yield cons_case
        case Fix(_, _, annot, body, default):
            yield annot
            yield body
            yield default
        case Sel(target, _):
            yield target
        case Unpack(_, arg):
            yield arg
        case Singleton(term, underlying):
            yield term
            yield underlying
        case Pi(_, domain, codomain):
            yield domain
            yield codomain
        case MatchT(scrutinee, nil_type, _, _, cons_type):
            yield scrutinee
            yield nil_type
            yield cons_type
        case Exists(_, domain, body):
            yield domain
            yield body
        case _:
            return


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal of a node and everything below it."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(list(children(current))))


def scoped_children(node: Node) -> list[tuple[Node, tuple[str, ...]]]:
    """Immediate children paired with the names ``node`` binds over them."""
    match node:
        case Abs(binder, annot, body):
            return [(annot, ()), (body, (binder,))]
        case Fix(_, binder, annot, body, default):
            return [(annot, ()), (body, (binder,)), (default, ())]
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            return [(scrutinee, ()), (nil_case, ()), (cons_case, (hd, tl))]
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            return [(scrutinee, ()), (nil_type, ()), (cons_type, (hd, tl))]
        case Pi(binder, domain, codomain):
            return [(domain, ()), (codomain, (binder,))]
        case Exists(binder, domain, body):
            return [(domain, ()), (body, (binder,))]
    return [(child, ()) for child in children(node)]


def rebuild(node: Node, new: list[Node]) -> Node:
    """Copy of ``node`` with its children, in ``children`` order, replaced."""
    match node:
        case Abs(binder):
            return Abs(binder, new[0], new[1], trail=node.trail)
        case App():
            return App(new[0], new[1], site=node.site)
        case Cons():
            return Cons(new[0], new[1])
        case Match(hd_binder=hd, tl_binder=tl):
            return Match(new[0], new[1], hd, tl, new[2])
        case Fix(bound, binder):
            return Fix(bound, binder, new[0], new[1], new[2])
        case Sel(_, index):
            return Sel(new[0], index)
        case Unpack(base):
            return Unpack(base, new[0])
        case Singleton():
            return Singleton(new[0], new[1])
        case Pi(binder):
            return Pi(binder, new[0], new[1])
        case ConsT():
            return ConsT(new[0], new[1])
        case MatchT(hd_binder=hd, tl_binder=tl):
            return MatchT(new[0], new[1], hd, tl, new[2])
        case Exists(binder):
            return Exists(binder, new[0], new[1])
    return node


def all_names(node: Node) -> set[str]:
    """Every variable name occurring in ``node``, bound or free."""
    names: set[str] = set()
    for sub in walk(node):
        match sub:
            case Var(name):
                names.add(name)
            case Abs(binder=b) | Fix(binder=b) | Pi(binder=b) | Exists(binder=b):
                names.add(b)
            case Match(hd_binder=h, tl_binder=t) | MatchT(hd_binder=h, tl_binder=t):
                names.update((h, t))
    return names


def _compute_fv(node: Node) -> frozenset[str]:
    match node:
        case Var(name):
            return frozenset((name,))
        case Abs(binder, annot, body):
            return annot.fv | (body.fv - {binder})
        case Fix(_, binder, annot, body, default):
            return annot.fv | (body.fv - {binder}) | default.fv
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            return scrutinee.fv | nil_case.fv | (cons_case.fv - {hd, tl})
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            return scrutinee.fv | nil_type.fv | (cons_type.fv - {hd, tl})
        case Pi(binder, domain, codomain):
            return domain.fv | (codomain.fv - {binder})
        case Exists(binder, domain, body):
            return domain.fv | (body.fv - {binder})
        case _:
            result: frozenset[str] = frozenset()
            for child in children(node):
                result |= child.fv
            return result


def free_vars(node: Node) -> frozenset[str]:
    """Exact set of unbound names of a term or type."""
    return node.fv


# --- substitution ----------------------------------------------------------


def _prime(name: str, avoid: set[str]) -> str:
    candidate = name + "'"
    while candidate in avoid:
        candidate += "'"
    return candidate


def _bind(
    binders: tuple[str, ...],
    scoped: tuple[Node, ...],
    mapping: Mapping[str, Term],
) -> tuple[tuple[str, ...], tuple[Node, ...]]:
    """Push ``mapping`` under ``binders`` scoping over ``scoped``, renaming on capture."""
    inner = {k: v for k, v in mapping.items() if k not in binders}
    inner = {k: v for k, v in inner.items() if any(k in s.fv for s in scoped)}
    if not inner:
        return binders, scoped
    incoming: set[str] = set()
    for value in inner.values():
        incoming |= value.fv
    avoid = set(incoming) | set(inner) | set(binders)
    for s in scoped:
        avoid |= s.fv
    renaming: dict[str, Term] = {}
    new_binders = []
    for b in binders:
        if b in incoming:
            fresh = _prime(b, avoid)
            avoid.add(fresh)
            renaming[b] = Var(fresh)
            new_binders.append(fresh)
        else:
            new_binders.append(b)
    if renaming:
        scoped = tuple(subst_many(s, renaming) for s in scoped)
    return tuple(new_binders), tuple(subst_many(s, inner) for s in scoped)


def subst_many(node: Node, mapping: Mapping[str, Term]) -> Node:
    """Simultaneous capture-avoiding substitution of terms for variables."""
    mapping = {k: v for k, v in mapping.items() if k in node.fv}
    if not mapping:
        return node
    match node:
        case Var(name):
            return mapping.get(name, node)
        case Abs(binder, annot, body):
            (b,), (new_body,) = _bind((binder,), (body,), mapping)
            return Abs(b, subst_many(annot, mapping), new_body, trail=node.trail)
        case App(fn, arg):
            return App(subst_many(fn, mapping), subst_many(arg, mapping), site=node.site)
        case Cons(head, tail):
            return Cons(subst_many(head, mapping), subst_many(tail, mapping))
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            (h, t), (new_case,) = _bind((hd, tl), (cons_case,), mapping)
            return Match(
                subst_many(scrutinee, mapping), subst_many(nil_case, mapping), h, t, new_case
            )
        case Fix(bound, binder, annot, body, default):
            (b,), (new_body,) = _bind((binder,), (body,), mapping)
            return Fix(
                bound, b, subst_many(annot, mapping), new_body, subst_many(default, mapping)
            )
        case Sel(target, index):
            return Sel(subst_many(target, mapping), index)
        case Unpack(base, arg):
            return Unpack(base, subst_many(arg, mapping))
        case Singleton(term, underlying):
            return Singleton(subst_many(term, mapping), subst_many(underlying, mapping))
        case Pi(binder, domain, codomain):
            (b,), (new_codomain,) = _bind((binder,), (codomain,), mapping)
            return Pi(b, subst_many(domain, mapping), new_codomain)
        case ConsT(head, tail):
            return ConsT(subst_many(head, mapping), subst_many(tail, mapping))
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            (h, t), (new_type,) = _bind((hd, tl), (cons_type,), mapping)
            return MatchT(
                subst_many(scrutinee, mapping), subst_many(nil_type, mapping), h, t, new_type
            )
        case Exists(binder, domain, body):
            (b,), (new_body,) = _bind((binder,), (body,), mapping)
            return Exists(b, subst_many(domain, mapping), new_body)
    return node


def subst(node: Node, x: str, s: Term) -> Node:
    """Capture-avoiding substitution ``node[x ↦ s]``."""
    return subst_many(node, {x: s})


def rename(node: Node, old: str, new: str) -> Node:
    return subst_many(node, {old: Var(new)})


# --- alpha equivalence -----------------------------------------------------


def _canon(node: Node, env: dict[str, int], depth: int):
    """De Bruijn form: bound names become indices, free names stay."""

    def under(names: tuple[str, ...], child: Node):
        inner = dict(env)
        for offset, name in enumerate(names):
            inner[name] = depth + offset
        return _canon(child, inner, depth + len(names))

    match node:
        case Var(name):
            if name in env:
                return ("bound", depth - 1 - env[name])
            return ("free", name)
        case Abs(binder, annot, body):
            return ("abs", _canon(annot, env, depth), under((binder,), body))
        case Fix(bound, binder, annot, body, default):
            return (
                "fix",
                bound,
                _canon(annot, env, depth),
                under((binder,), body),
                _canon(default, env, depth),
            )
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            return (
                "match",
                _canon(scrutinee, env, depth),
                _canon(nil_case, env, depth),
                under((hd, tl), cons_case),
            )
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            return (
                "Match",
                _canon(scrutinee, env, depth),
                _canon(nil_type, env, depth),
                under((hd, tl), cons_type),
            )
        case Pi(binder, domain, codomain):
            return ("Pi", _canon(domain, env, depth), under((binder,), codomain))
        case Exists(binder, domain, body):
            return ("exists", _canon(domain, env, depth), under((binder,), body))
        case Choose(base):
            return ("choose", base.value)
        case Unpack(base, arg):
            return ("unpack", base.value, _canon(arg, env, depth))
        case Sel(target, index):
            return ("sel", index, _canon(target, env, depth))
        case Base(kind):
            return ("base", kind.value)
        case TrailLit(tree):
            # leaves hold closed values, compared structurally
            return ("trail", tree)
        case _:
            return (type(node).__name__,) + tuple(_canon(c, env, depth) for c in children(node))


def alpha_eq(a: Node, b: Node) -> bool:
    """True iff ``a`` and ``b`` are equal up to consistent renaming of binders."""
    if a is b:
        return True
    if type(a) is not type(b):
        return False
    return a.canon == b.canon


# --- dialects --------------------------------------------------------------

_CORE_ONLY_TERMS = (Sel, Unpack, TrailLit)
_CORE_ONLY_TYPES = (Exists,)


def dialect_violation(node: Node, dialect: Dialect) -> Optional[Node]:
    """First sub-node not allowed in ``dialect``, or None."""
    for sub in walk(node):
        if dialect is Dialect.SURFACE:
            if isinstance(sub, _CORE_ONLY_TERMS + _CORE_ONLY_TYPES):
                return sub
            if isinstance(sub, Base) and sub.kind is BaseKind.TRAIL:
                return sub
        elif isinstance(sub, Choose):
            return sub
    return None


def check_dialect(node: Node, dialect: Dialect) -> bool:
    """True iff ``node`` uses only constructs of ``dialect``."""
    return dialect_violation(node, dialect) is None


# --- selection chains ------------------------------------------------------


def select_chain(root: Term, path: Path) -> Term:
    """``root..p``: left-to-right application of selections."""
    term = root
    for index in path:
        term = Sel(term, index)
    return term


def path_of(term: Term) -> tuple[Term, Path]:
    """Split a selection chain into its root and path (empty for non-selections)."""
    indices: list[int] = []
    while isinstance(term, Sel):
        indices.append(term.index)
        term = term.target
    return term, tuple(reversed(indices))


def is_trail_chain(term: Term) -> bool:
    """A variable followed by zero or more selections."""
    root, _ = path_of(term)
    return isinstance(root, Var)


# --- contexts --------------------------------------------------------------


@dataclass(frozen=True)
class Context:
    """Ordered bindings ``x:T``; names are pairwise distinct."""

    bindings: tuple[tuple[str, Type], ...] = ()

    @cached_property
    def names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.bindings)

    def extend(self, name: str, ty: Type) -> "Context":
        if name in self.names:
            raise ValueError(f"context already binds '{name}'")
        return Context(self.bindings + ((name, ty),))

    @cached_property
    def _index(self) -> dict[str, Type]:
        return dict(self.bindings)

    def lookup(self, name: str) -> Optional[Type]:
        return self._index.get(name)

    def fresh_binder(self, name: str, names: "FreshNames") -> str:
        """``name`` itself unless the context already binds it."""
        return names.binder_for(name, self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)


EMPTY_CONTEXT = Context()


class FreshNames:
    """Session-local supply of names that never collide with reserved ones."""

    def __init__(self, reserved=()):
        self._used: set[str] = set(reserved)
        self._counters: dict[str, int] = {}

    def reserve(self, names) -> None:
        self._used.update(names)

    def reserve_from(self, node: Node) -> None:
        self._used.update(all_names(node))

    def fresh(self, hint: str = "z", avoid=()) -> str:
        base = hint.rstrip("0123456789'") or "v"
        counter = self._counters.get(base, 0)
        while True:
            name = f"{base}{counter}"
            counter += 1
            if name not in self._used and name not in avoid:
                break
        self._counters[base] = counter
        self._used.add(name)
        return name

    def binder_for(self, name: str, avoid) -> str:
        """Keep ``name`` unless it clashes with ``avoid``; otherwise a fresh variant."""
        if name not in avoid:
            self._used.add(name)
            return name
        return self.fresh(name, avoid)
