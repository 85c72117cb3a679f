"""Bidirectional type inference and checking for core terms.

Inference always returns a singleton ``{t}_U`` whose term is the input term.
"""

from __future__ import annotations

import logging
from typing import Union

from ..core.errors import InferFailure, OutOfFuel
from ..core.fuel import Fuel
from ..core.syntax import (
    LIST,
    TOP,
    TRAIL,
    Abs,
    App,
    Base,
    Choose,
    Cons,
    ConsT,
    Context,
    Exists,
    Fix,
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
    base_type,
    rename,
    subst,
)
from . import normalize as normalization
from . import subtype as subtyping
from .session import Session, Verdict, open_session

logger = logging.getLogger(__name__)


def _extend(ctx: Context, binder: str, ty: Type, scoped: Term, s: Session) -> tuple[Context, str, Term]:
    fresh = ctx.fresh_binder(binder, s.names)
    if fresh != binder:
        scoped = rename(scoped, binder, fresh)
    return ctx.extend(fresh, ty), fresh, scoped


def _function_type(ctx: Context, ty: Type, s: Session) -> Pi | None:
    widened = subtyping.widen(ty, s)
    if isinstance(widened, Pi):
        return widened
    # lowered annotations may wrap function types in vacuous existentials
    widened = subtyping.widen(normalization.normalize_in(ctx, ty, s), s)
    return widened if isinstance(widened, Pi) else None


def infer_in(ctx: Context, t: Term, s: Session) -> Singleton:
    s.fuel.consume()
    match t:
        case Var(name):
            ty = ctx.lookup(name)
            if ty is None:
                raise InferFailure(t, f"unbound variable '{name}'")
            return Singleton(t, ty)
        case Abs(binder, annot, body):
            check_well_formed_in(ctx, annot, s)
            inner, fresh, body = _extend(ctx, binder, annot, body, s)
            return Singleton(t, Pi(fresh, annot, infer_in(inner, body, s)))
        case App(fn, arg):
            fn_type = infer_in(ctx, fn, s)
            pi = _function_type(ctx, fn_type, s)
            if pi is None:
                raise InferFailure(t, f"cannot apply {fn}: its type {fn_type} is not a function type")
            if not check_in(ctx, arg, pi.domain, s):
                raise InferFailure(t, f"argument {arg} does not check against {pi.domain}")
            return Singleton(t, subst(pi.codomain, pi.binder, arg))
        case Fix(_, binder, annot, body, default):
            check_well_formed_in(ctx, annot, s)
            inner, _, body = _extend(ctx, binder, annot, body, s)
            if not check_in(inner, body, annot, s):
                raise InferFailure(t, f"fixpoint body does not check against {annot}")
            if not check_in(ctx, default, annot, s):
                raise InferFailure(t, f"fixpoint default does not check against {annot}")
            return Singleton(t, annot)
        case Nil():
            return Singleton(t, LIST)
        case Cons(head, tail):
            head_type = infer_in(ctx, head, s)
            tail_type = infer_in(ctx, tail, s)
            if not subtyping.subtype_in(ctx, tail_type, LIST, s):
                raise InferFailure(t, f"tail {tail} is not a list")
            return Singleton(t, ConsT(head_type, tail_type))
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            if hd == tl:
                raise InferFailure(t, f"match binds '{hd}' twice")
            if not check_in(ctx, scrutinee, LIST, s):
                raise InferFailure(t, f"scrutinee {scrutinee} is not a list")
            nil_type = infer_in(ctx, nil_case, s)
            inner, new_hd, cons_case = _extend(ctx, hd, TOP, cons_case, s)
            inner, new_tl, cons_case = _extend(inner, tl, LIST, cons_case, s)
            cons_type = infer_in(inner, cons_case, s)
            return Singleton(t, MatchT(scrutinee, nil_type, new_hd, new_tl, cons_type))
        case Sel(target, _):
            if not check_in(ctx, target, TRAIL, s):
                raise InferFailure(t, f"{target} is not a trail")
            return Singleton(t, TRAIL)
        case Unpack(base, arg):
            if not check_in(ctx, arg, TRAIL, s):
                raise InferFailure(t, f"{arg} is not a trail")
            return Singleton(t, base_type(base))
        case TrailLit():
            return Singleton(t, TRAIL)
        case Choose():
            raise InferFailure(t, "choose[...] must be lowered before type checking")
    raise InferFailure(t, f"not a term: {t!r}")


def check_in(ctx: Context, t: Term, ty: Type, s: Session) -> bool:
    """``t ⇓ T``; OutOfFuel propagates."""
    return subtyping.subtype_in(ctx, infer_in(ctx, t, s), ty, s)


def check_well_formed_in(ctx: Context, ty: Type, s: Session) -> None:
    """Singleton terms inhabit their bound and match scrutinees are lists."""
    match ty:
        case Base():
            return
        case Singleton(term, underlying):
            check_well_formed_in(ctx, underlying, s)
            if not check_in(ctx, term, underlying, s):
                raise InferFailure(term, f"ill-formed type: {term} does not check against {underlying}")
        case Pi(binder, domain, codomain) | Exists(binder, domain, codomain):
            check_well_formed_in(ctx, domain, s)
            fresh = ctx.fresh_binder(binder, s.names)
            if fresh != binder:
                codomain = rename(codomain, binder, fresh)
            check_well_formed_in(ctx.extend(fresh, domain), codomain, s)
        case ConsT(head, tail):
            check_well_formed_in(ctx, head, s)
            check_well_formed_in(ctx, tail, s)
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            if not check_in(ctx, scrutinee, LIST, s):
                raise InferFailure(scrutinee, f"ill-formed type: match scrutinee {scrutinee} is not a list")
            check_well_formed_in(ctx, nil_type, s)
            new_hd = ctx.fresh_binder(hd, s.names)
            new_tl = s.names.binder_for(tl, ctx.names | {new_hd})
            inner = ctx.extend(new_hd, TOP).extend(new_tl, LIST)
            check_well_formed_in(inner, rename(rename(cons_type, hd, new_hd), tl, new_tl), s)


# --- public entry points ---------------------------------------------------


def infer(ctx: Context, t: Term, fuel: Union[int, Fuel, Session] = 10000) -> Singleton:
    """Infer ``Γ ⊢ t ⇑ {t}_U``; raises InferFailure or OutOfFuel."""
    return infer_in(ctx, t, open_session(fuel, t, ctx=ctx))


def check_verdict(
    ctx: Context, t: Term, ty: Type, fuel: Union[int, Fuel, Session] = 10000
) -> Verdict:
    s = open_session(fuel, t, ty, ctx=ctx)
    try:
        return Verdict.HOLDS if check_in(ctx, t, ty, s) else Verdict.FAILS
    except OutOfFuel:
        logger.debug("check of %s ran out of fuel", t)
        return Verdict.UNKNOWN


def check(ctx: Context, t: Term, ty: Type, fuel: Union[int, Fuel, Session] = 10000) -> bool:
    """``Γ ⊢ t ⇓ T``; running out of fuel counts as failure. InferFailure propagates."""
    return check_verdict(ctx, t, ty, fuel) is Verdict.HOLDS


def check_well_formed(ctx: Context, ty: Type, fuel: Union[int, Fuel, Session] = 10000) -> None:
    """Raise InferFailure unless ``ty`` is well-formed in ``ctx``."""
    check_well_formed_in(ctx, ty, open_session(fuel, ty, ctx=ctx))
