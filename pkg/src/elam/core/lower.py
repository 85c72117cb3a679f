"""Lowering of surface terms and types into the deterministic core.

Every ``choose[B]`` becomes ``unpack[B]`` applied to a distinct selection of
a trail variable; abstractions take their own trail as an extra first
parameter, supplied at each call site.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .errors import DialectError
from .syntax import (
    TRAIL,
    Abs,
    App,
    Base,
    BaseKind,
    Choose,
    Cons,
    ConsT,
    Exists,
    Fix,
    FreshNames,
    Match,
    MatchT,
    Nil,
    Path,
    Pi,
    Sel,
    Singleton,
    Term,
    Type,
    Unpack,
    Var,
    all_names,
    path_of,
    walk,
)


def _supply(names: Optional[FreshNames], *nodes) -> FreshNames:
    if names is not None:
        return names
    supply = FreshNames()
    for node in nodes:
        supply.reserve_from(node)
    return supply


def lower_term(p: Term, t: Term, names: Optional[FreshNames] = None) -> Term:
    """Lower surface term ``t`` using the trail ``p`` (a variable or selection chain)."""
    names = _supply(names, p, t)

    def go(p: Term, t: Term) -> Term:
        match t:
            case Var() | Nil():
                return t
            case Choose(base):
                return Unpack(base, p)
            case Abs(binder, annot, body):
                z = names.fresh("z")
                return Abs(z, TRAIL, Abs(binder, lower_type(annot, names), go(Var(z), body)))
            case App(fn, arg):
                return App(App(go(Sel(p, 1), fn), Sel(p, 3)), go(Sel(p, 2), arg))
            case Cons(head, tail):
                return Cons(go(Sel(p, 1), head), go(Sel(p, 2), tail))
            case Match(scrutinee, nil_case, hd, tl, cons_case):
                return Match(
                    go(Sel(p, 1), scrutinee), go(Sel(p, 2), nil_case), hd, tl, go(Sel(p, 3), cons_case)
                )
            case Fix(bound, binder, annot, body, default):
                return Fix(
                    bound, binder, lower_type(annot, names), go(Sel(p, 1), body), go(Sel(p, 2), default)
                )
        raise DialectError(f"cannot lower core construct {t}")

    return go(p, t)


def lower_type(ty: Type, names: Optional[FreshNames] = None) -> Type:
    """Lower a surface type; singletons and match scrutinees get their own trail."""
    names = _supply(names, ty)
    match ty:
        case Base(kind) if kind is not BaseKind.TRAIL:
            return ty
        case Singleton(term, underlying):
            z = names.fresh("z")
            return Exists(
                z, TRAIL, Singleton(lower_term(Var(z), term, names), lower_type(underlying, names))
            )
        case Pi(binder, domain, codomain):
            z = names.fresh("z")
            return Pi(
                z, TRAIL, Pi(binder, lower_type(domain, names), lower_type(codomain, names))
            )
        case ConsT(head, tail):
            return ConsT(lower_type(head, names), lower_type(tail, names))
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            z = names.fresh("z")
            lowered = MatchT(
                lower_term(Var(z), scrutinee, names),
                lower_type(nil_type, names),
                hd,
                tl,
                lower_type(cons_type, names),
            )
            return Exists(z, TRAIL, lowered) if z in lowered.fv else lowered
    raise DialectError(f"cannot lower core type {ty}")


def lower_program(t: Term, names: Optional[FreshNames] = None) -> Term:
    """``λz:Trail. ⟨⟨t⟩⟩^z`` for a whole surface program."""
    names = _supply(names, t)
    z = names.fresh("z")
    return Abs(z, TRAIL, lower_term(Var(z), t, names))


def lower_value(v: Term) -> Term:
    """Image of a surface value under lowering; only abstractions change."""
    names = FreshNames(all_names(v))
    return lower_term(Var(names.fresh("z")), v, names)


def unpack_paths(term: Term) -> Counter:
    """Multiset of (trail root, path) pairs that ``unpack`` is applied to."""
    found: Counter = Counter()
    for node in walk(term):
        if isinstance(node, Unpack):
            root, path = path_of(node.arg)
            if isinstance(root, Var):
                found[(root.name, path)] += 1
    return found


def has_distinct_trails(term: Term) -> bool:
    """No trail position is unpacked twice, and no unpacked path prefixes another."""
    found = unpack_paths(term)
    if any(count > 1 for count in found.values()):
        return False
    by_root: dict[str, list[Path]] = {}
    for root, path in found:
        by_root.setdefault(root, []).append(path)
    for paths in by_root.values():
        for a in paths:
            for b in paths:
                if a != b and b[: len(a)] == a:
                    return False
    return True
