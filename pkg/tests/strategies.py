"""Hypothesis strategies for terms, types, trails and surface programs."""

from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite

from elam.core import trail as trails
from elam.core.syntax import (
    LIST,
    TOP,
    Abs,
    App,
    BaseKind,
    Choose,
    Cons,
    ConsT,
    Exists,
    Fix,
    Match,
    MatchT,
    Nil,
    Pi,
    Singleton,
    TRAIL,
    Term,
    TrailLit,
    Type,
    Unpack,
    Var,
    select_chain,
)

BASES = st.sampled_from([BaseKind.TOP, BaseKind.LIST])


def paths(max_length: int = 4):
    return st.lists(st.sampled_from([1, 2, 3]), max_size=max_length).map(tuple)


list_values = st.recursive(
    st.just(Nil()),
    lambda inner: st.builds(Cons, inner, inner),
    max_leaves=4,
)


@composite
def leaves(draw: DrawFn) -> trails.Leaf:
    return trails.Leaf(draw(BASES), draw(list_values))


trail_trees = st.recursive(
    st.one_of(st.just(trails.EMPTY), leaves()),
    lambda inner: st.builds(trails.Node, inner, inner, inner),
    max_leaves=6,
)


# --- closed core terms ------------------------------------------------------


@composite
def core_terms(
    draw: DrawFn, depth: int = 3, scope: tuple[tuple[str, Type], ...] = (), with_trails: bool = False
) -> Term:
    """Core terms over lists, lambdas, fixpoints and matches, closed apart from ``scope``.

    With ``with_trails`` they also unpack trail literals, which do not print back
    to parseable text.
    """
    lists_in_scope = [name for name, ty in scope if ty == LIST]
    options = ["nil"]
    if scope:
        options.append("var")
    if with_trails:
        options.append("unpack")
    if depth > 0:
        options += ["cons", "app", "match", "abs", "fix", "higher"]
    kind = draw(st.sampled_from(options))
    if kind == "nil":
        return Nil()
    if kind == "unpack":
        return Unpack(draw(BASES), select_chain(TrailLit(draw(trail_trees)), draw(paths(2))))
    if kind == "var":
        return Var(draw(st.sampled_from([name for name, _ in scope])))
    if kind == "cons":
        return Cons(draw(core_terms(depth - 1, scope, with_trails)), draw(_list_terms(depth - 1, scope, with_trails)))
    if kind == "abs":
        binder = f"a{len(scope)}"
        annot = draw(st.sampled_from([TOP, LIST]))
        return Abs(binder, annot, draw(core_terms(depth - 1, scope + ((binder, annot),), with_trails)))
    if kind == "app":
        binder = f"a{len(scope)}"
        annot = draw(st.sampled_from([TOP, LIST]))
        body = draw(core_terms(depth - 1, scope + ((binder, annot),), with_trails))
        arg = draw(_list_terms(depth - 1, scope, with_trails)) if annot == LIST else draw(core_terms(depth - 1, scope, with_trails))
        return App(Abs(binder, annot, body), arg)
    if kind == "fix":
        binder = f"f{len(scope)}"
        body = draw(_list_terms(depth - 1, scope + ((binder, LIST),), with_trails))
        return Fix(draw(st.integers(0, 2)), binder, LIST, body, draw(_list_terms(depth - 1, scope, with_trails)))
    if kind == "higher":
        # a function passed as an argument and applied inside the callee
        g, x = f"g{len(scope)}", f"x{len(scope)}"
        fn = Abs(x, LIST, draw(_list_terms(depth - 1, scope + ((x, LIST),), with_trails)))
        call = App(Var(g), draw(_list_terms(depth - 1, scope, with_trails)))
        return App(Abs(g, Pi(x, LIST, LIST), call), fn)
    hd, tl = f"h{len(scope)}", f"t{len(scope)}"
    scrutinee = draw(_list_terms(depth - 1, scope, with_trails)) if not lists_in_scope else Var(draw(st.sampled_from(lists_in_scope)))
    return Match(
        scrutinee,
        draw(core_terms(depth - 1, scope, with_trails)),
        hd,
        tl,
        draw(core_terms(depth - 1, scope + ((hd, TOP), (tl, LIST)), with_trails)),
    )


@composite
def _list_terms(draw: DrawFn, depth: int, scope, with_trails: bool = False) -> Term:
    lists_in_scope = [name for name, ty in scope if ty == LIST]
    options = ["nil"] + (["var"] if lists_in_scope else []) + (["cons"] if depth > 0 else [])
    kind = draw(st.sampled_from(options))
    if kind == "nil":
        return Nil()
    if kind == "var":
        return Var(draw(st.sampled_from(lists_in_scope)))
    return Cons(draw(core_terms(depth - 1, scope, with_trails)), draw(_list_terms(depth - 1, scope, with_trails)))


# --- closed types -------------------------------------------------------------


@composite
def closed_types(draw: DrawFn, depth: int = 3, scope: tuple[tuple[str, Type], ...] = ()) -> Type:
    """Closed types: bases, list singletons, cons, match, existential and function types."""
    options = ["top", "list", "singleton"]
    if depth > 0:
        options += ["cons", "exists", "match", "pi"]
    kind = draw(st.sampled_from(options))
    if kind == "top":
        return TOP
    if kind == "list":
        return LIST
    if kind == "singleton":
        term = draw(_list_terms(min(depth, 2), scope))
        return Singleton(term, draw(st.sampled_from([TOP, LIST])))
    if kind == "cons":
        tail = draw(st.one_of(st.just(LIST), _list_singletons(scope)))
        return ConsT(draw(closed_types(depth - 1, scope)), tail)
    if kind == "exists":
        binder = f"e{len(scope)}"
        domain = draw(st.sampled_from([TOP, LIST]))
        return Exists(binder, domain, draw(closed_types(depth - 1, scope + ((binder, domain),))))
    if kind == "pi":
        binder = f"p{len(scope)}"
        domain = draw(st.sampled_from([TOP, LIST]))
        return Pi(binder, domain, draw(closed_types(depth - 1, scope + ((binder, domain),))))
    hd, tl = f"h{len(scope)}", f"t{len(scope)}"
    return MatchT(
        draw(_list_terms(1, ())),
        draw(closed_types(depth - 1, scope)),
        hd,
        tl,
        draw(closed_types(depth - 1, scope + ((hd, TOP), (tl, LIST)))),
    )


@composite
def _list_singletons(draw: DrawFn, scope) -> Type:
    return Singleton(draw(_list_terms(1, scope)), LIST)


@composite
def _trail_picks(draw: DrawFn, binder: str, max_positions: int = 2) -> list[Term]:
    """Unpacks of prefix-free positions of ``binder``, some repeated, mixed with literals."""
    positions = draw(
        st.lists(paths(3).filter(bool), min_size=1, max_size=max_positions, unique=True).filter(
            lambda ps: not any(p != q and q[: len(p)] == p for p in ps for q in ps)
        )
    )
    used = positions + draw(st.lists(st.sampled_from(positions), max_size=1))
    picks: list[Term] = [Unpack(draw(BASES), select_chain(Var(binder), path)) for path in used]
    picks += draw(st.lists(st.just(Nil()), max_size=1))
    return draw(st.permutations(picks))


def _list_of(elements: list[Term]) -> Term:
    term: Term = Nil()
    for element in reversed(elements):
        term = Cons(element, term)
    return term


@composite
def trail_existentials(draw: DrawFn) -> Type:
    """Core types quantifying a trail whose positions are unpacked into lists."""
    shape = draw(st.sampled_from(["list", "cons", "nested"]))
    if shape == "nested":
        outer, inner = draw(_trail_picks("z", 1)), draw(_trail_picks("w", 1))
        return Exists("z", TRAIL, Exists("w", TRAIL, Singleton(_list_of(outer + inner), LIST)))
    picks = draw(_trail_picks("z"))
    if shape == "cons":
        first, rest = picks[0], picks[1:]
        return Exists("z", TRAIL, ConsT(Singleton(first, TOP), Singleton(_list_of(rest), LIST)))
    return Exists("z", TRAIL, Singleton(_list_of(picks), LIST))


# --- surface programs -------------------------------------------------------------


@composite
def surface_programs(draw: DrawFn, depth: int = 3, scope: tuple[str, ...] = ()) -> Term:
    """Closed surface terms with choices, evaluating to first-order lists."""
    options = ["nil", "choose"] + (["var"] if scope else [])
    if depth > 0:
        options += ["cons", "app", "match"]
    kind = draw(st.sampled_from(options))
    if kind == "nil":
        return Nil()
    if kind == "choose":
        return Choose(draw(BASES))
    if kind == "var":
        return Var(draw(st.sampled_from(scope)))
    if kind == "cons":
        return Cons(draw(surface_programs(depth - 1, scope)), draw(surface_programs(depth - 1, scope)))
    if kind == "app":
        binder = f"a{len(scope)}"
        body = draw(surface_programs(depth - 1, scope + (binder,)))
        return App(Abs(binder, TOP, body), draw(surface_programs(depth - 1, scope)))
    hd, tl = f"h{len(scope)}", f"t{len(scope)}"
    return Match(
        draw(surface_programs(depth - 1, scope)),
        draw(surface_programs(depth - 1, scope)),
        hd,
        tl,
        draw(surface_programs(depth - 1, scope + (hd, tl))),
    )


def function_types():
    """A few closed function types, for tests that need a Pi on one side."""
    return st.sampled_from(
        [
            Pi("x", LIST, LIST),
            Pi("x", TOP, TOP),
            Pi("x", LIST, Singleton(Var("x"), LIST)),
        ]
    )
