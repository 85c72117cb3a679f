"""Algorithmic subtyping.

Rules are tried in a fixed order and the first success wins::

    SubRefl, SubTop, widen fast path, SubSing, SubExistsLeft, SubMatch,
    SubExistsRight (greedy solve_x), SubCons1/SubCons2, SubPi, SubNorm

SubNorm (normalize, then untangle both sides) runs only at query entry and
before sub-derivations that extend the context. It stays optional: when the
normalized query fails nothing is lost, the structural attempt came first.
"""

from __future__ import annotations

import logging
from typing import Iterator, Optional, Union

from ..core.errors import InferFailure, OutOfFuel
from ..core.fuel import Fuel
from ..core.syntax import (
    EMPTY_CONTEXT,
    LIST,
    TOP,
    App,
    ConsT,
    Context,
    Exists,
    MatchT,
    Node,
    Pi,
    Singleton,
    Term,
    Type,
    Var,
    alpha_eq,
    rename,
    scoped_children,
    subst,
)
from . import infer as typing_rules
from . import normalize as normalization
from .session import Session, TraceNode, Verdict, open_session

logger = logging.getLogger(__name__)


def widen(ty: Type, session: Optional[Session] = None) -> Type:
    """Expose the bound of a singleton; function singletons keep ``{t x}`` as codomain."""
    if not isinstance(ty, Singleton):
        return ty
    underlying = ty.underlying
    if not isinstance(underlying, Pi):
        return widen(underlying, session)
    binder, codomain = underlying.binder, underlying.codomain
    if binder in ty.term.fv:
        avoid = ty.term.fv | ty.fv
        if session is not None:
            fresh = session.names.fresh(binder, avoid)
        else:
            fresh = binder + "'"
            while fresh in avoid:
                fresh += "'"
        codomain = rename(codomain, binder, fresh)
        binder = fresh
    return Pi(binder, underlying.domain, Singleton(App(ty.term, Var(binder)), codomain))


# --- solve_x ---------------------------------------------------------------


def _alignments(x: str, left: Node, right: Node, bound: frozenset[str]) -> Iterator[Term]:
    """Subterms of ``left`` sitting where ``right`` has a free ``x``, in left-to-right order."""
    if isinstance(right, Var) and right.name == x and x not in bound:
        if isinstance(left, Term):
            yield left
        return
    if isinstance(right, Exists) and not isinstance(left, Exists):
        if right.binder != x:
            yield from _alignments(x, left, right.body, bound | {right.binder})
        return
    if isinstance(left, Exists) and not isinstance(right, Exists):
        yield from _alignments(x, left.body, right, bound | {left.binder})
        return
    if isinstance(left, Singleton) and not isinstance(right, Singleton):
        yield from _alignments(x, left.underlying, right, bound)
        return
    if type(left) is not type(right):
        return
    left_parts, right_parts = scoped_children(left), scoped_children(right)
    if len(left_parts) != len(right_parts):
        return
    for (lchild, lbound), (rchild, rbound) in zip(left_parts, right_parts):
        if x in rbound:
            continue
        yield from _alignments(x, lchild, rchild, bound | set(lbound) | set(rbound))


def _solve(ctx: Context, x: str, t1: Type, s_type: Type, t2: Type, s: Session) -> Optional[Singleton]:
    candidate = next(_alignments(x, t1, t2, frozenset()), None)
    if candidate is None and isinstance(s_type, Singleton):
        # the bound already pins x down
        candidate = s_type.term
    if candidate is None:
        return None
    if not candidate.fv <= ctx.names:
        logger.debug("solve_%s: candidate %s escapes its scope", x, candidate)
        return None
    try:
        return typing_rules.infer_in(ctx, candidate, s)
    except InferFailure:
        return None


def solve_x(
    x: str,
    t1: Type,
    s_type: Type,
    t2: Type,
    ctx: Context = EMPTY_CONTEXT,
    fuel: Union[int, Fuel, Session] = 10000,
) -> Optional[Singleton]:
    """Greedy instantiation for ``x`` in ``t1 <: exists x: s_type. t2``; None when none is found."""
    if x not in t2.fv:
        return None
    return _solve(ctx, x, t1, s_type, t2, open_session(fuel, t1, s_type, t2, ctx=ctx))


# --- the algorithm ---------------------------------------------------------


def _conclude(node: Optional[TraceNode], rule: str, ok: bool) -> bool:
    if node is not None and (ok or node.rule is None):
        node.rule, node.ok = rule, ok
    return ok


def _sub(ctx: Context, t1: Type, t2: Type, s: Session, allow_norm: bool) -> bool:
    s.fuel.consume()
    with s.goal(lambda: f"{t1} <: {t2}") as node:
        if alpha_eq(t1, t2):
            return _conclude(node, "SubRefl", True)
        if t2 == TOP:
            return _conclude(node, "SubTop", True)

        if isinstance(t1, Singleton):
            if isinstance(t1.underlying, Pi) and _sub(ctx, widen(t1, s), t2, s, False):
                return _conclude(node, "SubSing/widen", True)
            if _sub(ctx, t1.underlying, t2, s, False):
                return _conclude(node, "SubSing", True)

        if isinstance(t1, Exists):
            binder = ctx.fresh_binder(t1.binder, s.names)
            body = t1.body if binder == t1.binder else rename(t1.body, t1.binder, binder)
            if _sub(ctx.extend(binder, t1.domain), body, t2, s, True):
                return _conclude(node, "SubExistsLeft", True)

        if isinstance(t1, MatchT) and _sub_match(ctx, t1, t2, s):
            return _conclude(node, "SubMatch", True)

        if isinstance(t2, Exists) and _sub_exists_right(ctx, t1, t2, s):
            return _conclude(node, "SubExistsRight", True)

        if isinstance(t1, ConsT):
            if t2 == LIST:
                return _conclude(node, "SubCons1", True)
            if (
                isinstance(t2, ConsT)
                and _sub(ctx, t1.head, t2.head, s, False)
                and _sub(ctx, t1.tail, t2.tail, s, False)
            ):
                return _conclude(node, "SubCons2", True)

        if isinstance(t1, Pi) and isinstance(t2, Pi) and _sub_pi(ctx, t1, t2, s):
            return _conclude(node, "SubPi", True)

        if allow_norm and _sub_norm(ctx, t1, t2, s):
            return _conclude(node, "SubNorm", True)

        return _conclude(node, "none", False)


def _sub_match(ctx: Context, t1: MatchT, t2: Type, s: Session) -> bool:
    if not _sub(ctx, t1.nil_type, t2, s, False):
        return False
    avoid = ctx.names | t2.fv
    hd = s.names.binder_for(t1.hd_binder, avoid)
    tl = s.names.binder_for(t1.tl_binder, avoid | {hd})
    branch = rename(rename(t1.cons_type, t1.hd_binder, hd), t1.tl_binder, tl)
    return _sub(ctx.extend(hd, TOP).extend(tl, LIST), branch, t2, s, True)


def _sub_exists_right(ctx: Context, t1: Type, t2: Exists, s: Session) -> bool:
    x, body = t2.binder, t2.body
    if x in ctx or x in t1.fv:
        fresh = s.names.fresh(x, ctx.names | t1.fv)
        body, x = rename(body, x, fresh), fresh
    witness = _solve(ctx, x, t1, t2.domain, body, s)
    if witness is None:
        return False
    logger.debug("solve_%s picked %s", x, witness.term)
    # both premises are re-checked, the witness is only a guess
    return _sub(ctx, witness, t2.domain, s, False) and _sub(
        ctx, t1, subst(body, x, witness.term), s, True
    )


def _sub_pi(ctx: Context, t1: Pi, t2: Pi, s: Session) -> bool:
    if not _sub(ctx, t2.domain, t1.domain, s, False):
        return False
    binder = ctx.fresh_binder(t2.binder, s.names)
    left = rename(t1.codomain, t1.binder, binder) if t1.binder != binder else t1.codomain
    right = rename(t2.codomain, t2.binder, binder) if t2.binder != binder else t2.codomain
    return _sub(ctx.extend(binder, t2.domain), left, right, s, True)


def _sub_norm(ctx: Context, t1: Type, t2: Type, s: Session) -> bool:
    try:
        n1 = normalization.untangle(normalization.normalize_in(ctx, t1, s), s.names)
        n2 = normalization.untangle(normalization.normalize_in(ctx, t2, s), s.names)
    except InferFailure as exc:
        logger.debug("normalization failed: %s", exc)
        return False
    if alpha_eq(n1, t1) and alpha_eq(n2, t2):
        return False
    return _sub(ctx, n1, n2, s, False)


def subtype_in(ctx: Context, t1: Type, t2: Type, s: Session) -> bool:
    """Session-level entry; OutOfFuel propagates."""
    return _sub(ctx, t1, t2, s, True)


def subtype_verdict(
    ctx: Context, t1: Type, t2: Type, fuel: Union[int, Fuel, Session] = 10000
) -> Verdict:
    """Three-valued subtyping: UNKNOWN when fuel runs out."""
    s = open_session(fuel, t1, t2, ctx=ctx)
    try:
        return Verdict.HOLDS if subtype_in(ctx, t1, t2, s) else Verdict.FAILS
    except OutOfFuel:
        logger.debug("subtyping %s <: %s ran out of fuel", t1, t2)
        return Verdict.UNKNOWN


def subtype(ctx: Context, t1: Type, t2: Type, fuel: Union[int, Fuel, Session] = 10000) -> bool:
    """``Γ ⊢ t1 <: t2``; unknown counts as not a subtype."""
    return subtype_verdict(ctx, t1, t2, fuel) is Verdict.HOLDS

