"""Per-query state: fresh names, the shared fuel counter and rule traces."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, Optional, Union

from ..core.fuel import Fuel
from ..core.syntax import Context, FreshNames, Node


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:
        return self is Verdict.HOLDS


@dataclass
class TraceNode:
    """One attempted subtyping goal and the rule that closed it (if any)."""

    goal: str
    rule: Optional[str] = None
    ok: Optional[bool] = None
    children: list["TraceNode"] = field(default_factory=list)


class Session:
    """Fresh-name supply, fuel and optional tracing for one checking session."""

    def __init__(
        self,
        fuel: Union[int, Fuel] = 10000,
        names: Optional[FreshNames] = None,
        trace: bool = False,
    ):
        self.fuel = Fuel.coerce(fuel)
        self.names = names or FreshNames()
        self.trace = trace
        self.roots: list[TraceNode] = []
        self._stack: list[TraceNode] = []

    def reserve(self, *nodes: Node, ctx: Optional[Context] = None) -> "Session":
        for node in nodes:
            self.names.reserve_from(node)
        if ctx is not None:
            for name, ty in ctx:
                self.names.reserve((name,))
                self.names.reserve_from(ty)
        return self

    @contextmanager
    def goal(self, describe: Callable[[], str]) -> Iterator[Optional[TraceNode]]:
        """Open a trace node for a sub-goal; yields None when tracing is off."""
        if not self.trace:
            yield None
            return
        node = TraceNode(describe())
        (self._stack[-1].children if self._stack else self.roots).append(node)
        self._stack.append(node)
        try:
            yield node
        finally:
            self._stack.pop()


def open_session(
    fuel: Union[int, Fuel, Session], *nodes: Node, ctx: Optional[Context] = None
) -> Session:
    """Reuse a session passed as ``fuel`` or start a new one; reserve every name in sight."""
    session = fuel if isinstance(fuel, Session) else Session(fuel)
    return session.reserve(*nodes, ctx=ctx)
