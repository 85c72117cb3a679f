"""Type normalization and untangling of trail existentials."""

from __future__ import annotations

import logging
from typing import Callable, Iterator, Optional, Union

from ..core.fuel import Fuel
from ..core.syntax import (
    LIST,
    TOP,
    TRAIL,
    Base,
    BaseKind,
    Cons,
    ConsT,
    Context,
    Exists,
    FreshNames,
    MatchT,
    Nil,
    Node,
    Path,
    Pi,
    Sel,
    Singleton,
    Term,
    Type,
    Unpack,
    Var,
    all_names,
    base_type,
    path_of,
    rebuild,
    rename,
    scoped_children,
    select_chain,
    subst_many,
)
from . import infer as typing_rules
from .betadelta import bd_reduce
from .session import Session, open_session

logger = logging.getLogger(__name__)


def _open_binder(ctx: Context, binder: str, scoped: Type, s: Session) -> tuple[str, Type]:
    fresh = ctx.fresh_binder(binder, s.names)
    return fresh, (scoped if fresh == binder else rename(scoped, binder, fresh))


def normalize_in(ctx: Context, ty: Type, s: Session) -> Type:
    s.fuel.consume()
    match ty:
        case Base():
            return ty
        case Singleton(term, _):
            reduced = bd_reduce(ctx, term, s)
            return typing_rules.infer_in(ctx, reduced, s)
        case Pi(binder, domain, codomain):
            domain = normalize_in(ctx, domain, s)
            binder, codomain = _open_binder(ctx, binder, codomain, s)
            return Pi(binder, domain, normalize_in(ctx.extend(binder, domain), codomain, s))
        case Exists(binder, domain, body):
            domain = normalize_in(ctx, domain, s)
            binder, body = _open_binder(ctx, binder, body, s)
            body = normalize_in(ctx.extend(binder, domain), body, s)
            if binder not in body.fv:
                return body
            return Exists(binder, domain, body)
        case ConsT(head, tail):
            return ConsT(normalize_in(ctx, head, s), normalize_in(ctx, tail, s))
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            reduced = bd_reduce(ctx, scrutinee, s)
            if isinstance(reduced, Nil):
                return normalize_in(ctx, nil_type, s)
            if isinstance(reduced, Cons):
                new_hd = ctx.fresh_binder(hd, s.names)
                new_tl = s.names.binder_for(tl, ctx.names | {new_hd})
                branch = subst_many(cons_type, {hd: Var(new_hd), tl: Var(new_tl)})
                inner = ctx.extend(new_hd, Singleton(reduced.head, TOP)).extend(
                    new_tl, Singleton(reduced.tail, LIST)
                )
                branch = normalize_in(inner, branch, s)
                return subst_many(branch, {new_hd: reduced.head, new_tl: reduced.tail})
            return MatchT(reduced, nil_type, hd, tl, cons_type)
    raise TypeError(f"not a type: {ty!r}")


def normalize(ctx: Context, ty: Type, fuel: Union[int, Fuel, Session] = 10000) -> Type:
    """Normalize ``ty`` under ``ctx``; raises OutOfFuel or InferFailure."""
    return normalize_in(ctx, ty, open_session(fuel, ty, ctx=ctx))


# --- untangle --------------------------------------------------------------


def selection_occurrences(node: Node, x: str) -> Iterator[tuple[Path, Optional[BaseKind]]]:
    """Maximal chains ``x..p`` in ``node``, with the tag of a directly enclosing unpack."""
    match node:
        case Unpack(base, arg):
            root, path = path_of(arg)
            if isinstance(root, Var) and root.name == x:
                yield path, base
                return
        case Var() | Sel():
            root, path = path_of(node)
            if isinstance(root, Var):
                if root.name == x:
                    yield path, None
                return
            yield from selection_occurrences(root, x)
            return
    for child, bound in scoped_children(node):
        if x not in bound:
            yield from selection_occurrences(child, x)


def trails_of(x: str, ty: Node) -> set[Path]:
    """Maximal selection paths applied to ``x`` anywhere in ``ty``."""
    return {path for path, _ in selection_occurrences(ty, x)}


def _replace(
    node: Node,
    x: str,
    on_unpack: Callable[[Path, BaseKind], Optional[Term]],
    on_chain: Callable[[Path], Optional[Term]],
) -> Node:
    match node:
        case Unpack(base, arg):
            root, path = path_of(arg)
            if isinstance(root, Var) and root.name == x:
                replaced = on_unpack(path, base)
                if replaced is not None:
                    return replaced
                chain = on_chain(path)
                return node if chain is None else Unpack(base, chain)
        case Var() | Sel():
            root, path = path_of(node)
            if isinstance(root, Var):
                if root.name == x:
                    chain = on_chain(path)
                    return node if chain is None else chain
                return node
            new_root = _replace(root, x, on_unpack, on_chain)
            return node if new_root is root else select_chain(new_root, path)
    parts = scoped_children(node)
    new = [child if x in bound else _replace(child, x, on_unpack, on_chain) for child, bound in parts]
    if all(a is b for a, b in zip(new, (child for child, _ in parts))):
        return node
    return rebuild(node, new)


def _wrap(x: str, body: Type, names: FreshNames) -> Type:
    occurrences = list(selection_occurrences(body, x))
    paths = {path for path, _ in occurrences}
    if not paths:
        return body
    if () in paths:
        return Exists(x, TRAIL, body)
    minimal = sorted(
        p for p in paths if not any(q != p and p[: len(q)] == q for q in paths)
    )
    logger.debug("untangling %s over %d position(s)", x, len(minimal))
    result = body
    # the first path ends up as the outermost quantifier
    for prefix in reversed(minimal):
        group = [(path, tag) for path, tag in occurrences if path[: len(prefix)] == prefix]
        tags = {tag for _, tag in group}
        if all(path == prefix for path, _ in group) and len(tags) == 1 and None not in tags:
            tag = tags.pop()
            y = names.fresh("x")
            result = Exists(
                y,
                base_type(tag),
                _replace(
                    result,
                    x,
                    lambda path, base, y=y, p=prefix, b=tag: Var(y) if path == p and base is b else None,
                    lambda path: None,
                ),
            )
        else:
            y = names.fresh("y")
            result = Exists(
                y,
                TRAIL,
                _replace(
                    result,
                    x,
                    lambda path, base: None,
                    lambda path, y=y, p=prefix: (
                        select_chain(Var(y), path[len(p) :]) if path[: len(p)] == p else None
                    ),
                ),
            )
    return result


def _untangle(ty: Type, names: FreshNames) -> Type:
    match ty:
        case Exists(binder, Base(BaseKind.TRAIL), body):
            return _wrap(binder, _untangle(body, names), names)
        case Exists(binder, domain, body):
            return Exists(binder, _untangle(domain, names), _untangle(body, names))
        case Pi(binder, domain, codomain):
            return Pi(binder, _untangle(domain, names), _untangle(codomain, names))
        case Singleton(term, underlying):
            return Singleton(term, _untangle(underlying, names))
        case ConsT(head, tail):
            return ConsT(_untangle(head, names), _untangle(tail, names))
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            return MatchT(scrutinee, _untangle(nil_type, names), hd, tl, _untangle(cons_type, names))
    return ty


def untangle(ty: Type, names: Optional[FreshNames] = None) -> Type:
    """Replace each trail existential by independent existentials per used position."""
    if names is None:
        names = FreshNames(all_names(ty))
    return _untangle(ty, names)
