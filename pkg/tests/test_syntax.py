"""Tests for syntax nodes, substitution and alpha equivalence."""

import itertools

import pytest
from hypothesis import given, strategies as st

from elam.core.syntax import (
    LIST,
    TOP,
    TRAIL,
    Abs,
    App,
    BaseKind,
    Choose,
    Cons,
    Context,
    Dialect,
    Exists,
    Fix,
    FreshNames,
    Match,
    Nil,
    Pi,
    Sel,
    Singleton,
    Unpack,
    Var,
    alpha_eq,
    check_dialect,
    free_vars,
    path_of,
    select_chain,
    subst,
    subst_many,
)

from strategies import core_terms, paths


class TestAlphaEquivalence:
    def test_renamed_binder(self):
        assert alpha_eq(Abs("x", TOP, Var("x")), Abs("y", TOP, Var("y")))

    def test_free_names_matter(self):
        assert not alpha_eq(Abs("x", TOP, Var("y")), Abs("y", TOP, Var("y")))

    def test_match_binds_two_names(self):
        left = Match(Var("l"), Nil(), "h", "t", Cons(Var("t"), Var("h")))
        right = Match(Var("l"), Nil(), "a", "b", Cons(Var("b"), Var("a")))
        assert alpha_eq(left, right)

    def test_existential_binder(self):
        assert alpha_eq(
            Exists("z", TRAIL, Singleton(Unpack(BaseKind.TOP, Var("z")), TOP)),
            Exists("w", TRAIL, Singleton(Unpack(BaseKind.TOP, Var("w")), TOP)),
        )

    @given(core_terms())
    def test_reflexive(self, t):
        assert alpha_eq(t, t)

    @given(core_terms(depth=2), core_terms(depth=2))
    def test_symmetric(self, t, u):
        assert alpha_eq(t, u) == alpha_eq(u, t)

    @given(core_terms(depth=1), core_terms(depth=1), core_terms(depth=1))
    def test_transitive(self, t, u, v):
        if alpha_eq(t, u) and alpha_eq(u, v):
            assert alpha_eq(t, v)

    @given(core_terms())
    def test_binder_names_are_irrelevant(self, t):
        variants = [Abs(name, LIST, t) for name in ("q", "r", "s")]
        for left, right in itertools.permutations(variants, 2):
            assert alpha_eq(left, right)


class TestSubstitution:
    def test_replaces_free_occurrences(self):
        assert subst(Cons(Var("x"), Var("y")), "x", Nil()) == Cons(Nil(), Var("y"))

    def test_stops_at_binder(self):
        t = Abs("x", TOP, Var("x"))
        assert subst(t, "x", Nil()) == t

    def test_avoids_capture(self):
        result = subst(Abs("y", TOP, App(Var("x"), Var("y"))), "x", Var("y"))
        assert alpha_eq(result, Abs("w", TOP, App(Var("y"), Var("w"))))
        assert result.binder != "y"

    def test_simultaneous(self):
        swapped = subst_many(Cons(Var("x"), Var("y")), {"x": Var("y"), "y": Var("x")})
        assert swapped == Cons(Var("y"), Var("x"))

    def test_reaches_into_types(self):
        ty = Pi("a", Singleton(Var("x"), LIST), Singleton(Var("a"), LIST))
        assert subst(ty, "x", Nil()) == Pi("a", Singleton(Nil(), LIST), Singleton(Var("a"), LIST))

    def test_free_vars(self):
        t = Match(Var("x"), Var("y"), "h", "t", Cons(Var("h"), Var("t")))
        assert free_vars(t) == {"x", "y"}

    @given(core_terms(), st.sampled_from(["y", "a0", "a1", "h1", "f0"]))
    def test_variable_for_itself_is_identity(self, t, x):
        assert alpha_eq(subst(t, x, Var(x)), t)

    @given(core_terms(scope=(("y", LIST),)), st.sampled_from([Nil(), Var("w"), Cons(Var("a0"), Var("a1"))]))
    def test_free_variables_after_substitution(self, t, s):
        result = subst(t, "y", s)
        assert free_vars(result) <= (free_vars(t) - {"y"}) | free_vars(s)
        if "y" in free_vars(t):
            assert free_vars(s) <= free_vars(result)


class TestNodes:
    def test_fix_bound_must_be_natural(self):
        with pytest.raises(ValueError):
            Fix(-1, "f", LIST, Var("f"), Nil())

    def test_selection_index(self):
        with pytest.raises(ValueError):
            Sel(Var("z"), 4)

    def test_nested_singletons_collapse(self):
        assert Singleton(Var("x"), Singleton(Nil(), LIST)) == Singleton(Var("x"), LIST)

    def test_dialects(self):
        assert check_dialect(Choose(BaseKind.TOP), Dialect.SURFACE)
        assert not check_dialect(Choose(BaseKind.TOP), Dialect.CORE)
        assert check_dialect(Sel(Var("z"), 1), Dialect.CORE)
        assert not check_dialect(Sel(Var("z"), 1), Dialect.SURFACE)
        assert not check_dialect(Exists("z", TRAIL, TOP), Dialect.SURFACE)

    @given(paths())
    def test_selection_chains(self, path):
        root, found = path_of(select_chain(Var("z"), path))
        assert root == Var("z")
        assert found == path


class TestContext:
    def test_lookup(self):
        ctx = Context().extend("x", LIST).extend("y", TOP)
        assert ctx.lookup("x") == LIST
        assert ctx.lookup("z") is None
        assert "y" in ctx
        assert len(ctx) == 2

    def test_names_are_distinct(self):
        with pytest.raises(ValueError):
            Context().extend("x", LIST).extend("x", TOP)

    def test_fresh_binder_renames_only_on_clash(self):
        names = FreshNames()
        ctx = Context().extend("x", LIST)
        assert ctx.fresh_binder("y", names) == "y"
        assert ctx.fresh_binder("x", names) != "x"


class TestFreshNames:
    def test_skips_reserved(self):
        names = FreshNames({"z0"})
        assert names.fresh("z") == "z1"
        assert names.fresh("z") == "z2"

    def test_reserve_from_node(self):
        names = FreshNames()
        names.reserve_from(Abs("z0", TOP, Var("z1")))
        assert names.fresh("z") == "z2"
