"""Beta-delta reduction: evaluation that also unfolds singleton-typed variables."""

from __future__ import annotations

from typing import Optional, Union

from ..core.evaluator import Reducer
from ..core.fuel import Fuel
from ..core.syntax import Context, Singleton, Term, Var
from .session import Session


class DeltaReducer(Reducer):
    """Unfolds ``x`` to ``t`` when the context gives ``x : {t}_U``."""

    def __init__(self, ctx: Context):
        super().__init__()
        self.ctx = ctx

    def expand_var(self, name: str) -> Optional[Term]:
        ty = self.ctx.lookup(name)
        if isinstance(ty, Singleton) and ty.term != Var(name):
            return ty.term
        return None


def bd_step(ctx: Context, t: Term) -> Optional[Term]:
    """One beta-delta step under ``ctx``; None for normal forms."""
    return DeltaReducer(ctx).reduce(t)


def bd_reduce(ctx: Context, t: Term, fuel: Union[int, Fuel, Session] = 10000) -> Term:
    """Reduce to beta-delta normal form under ``ctx``."""
    if isinstance(fuel, Session):
        fuel = fuel.fuel
    fuel = Fuel.coerce(fuel)
    reducer = DeltaReducer(ctx)
    while True:
        reduced = reducer.reduce(t)
        if reduced is None:
            return t
        fuel.consume()
        t = reduced
