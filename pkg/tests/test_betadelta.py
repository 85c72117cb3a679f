import pytest
from hypothesis import given, settings

from elam.checker import bd_reduce, bd_step
from elam.core import ElamError, OutOfFuel, evaluate_core
from elam.core.syntax import EMPTY_CONTEXT, LIST, Cons, Context, Nil, Singleton, Var, alpha_eq, subst

from strategies import core_terms, list_values


def test_unfolds_singleton_variables(ctx, term):
    assert bd_reduce(ctx("x: { nil : List }"), term("cons x x")) == Cons(Nil(), Nil())


def test_keeps_variables_without_a_singleton(ctx):
    assert bd_reduce(ctx("x: List"), Var("x")) == Var("x")


def test_unfolds_through_chains(ctx):
    assert bd_reduce(ctx("x: { nil : List }, y: { x : List }"), Var("y")) == Nil()


def test_beta(term):
    assert bd_reduce(EMPTY_CONTEXT, term("(\\(x: List) => cons x nil) nil")) == Cons(Nil(), Nil())


def test_normal_form_has_no_step():
    assert bd_step(EMPTY_CONTEXT, Nil()) is None


def test_one_step(ctx):
    assert bd_step(ctx("x: { nil : List }"), Var("x")) == Nil()


def test_fuel(term):
    with pytest.raises(OutOfFuel):
        bd_reduce(EMPTY_CONTEXT, term("fix[100](f: List => f, nil)"), fuel=5)


@given(core_terms(with_trails=True))
@settings(max_examples=100)
def test_empty_context_is_plain_evaluation(t):
    try:
        expected = evaluate_core(t)
    except ElamError:
        return
    assert alpha_eq(bd_reduce(EMPTY_CONTEXT, t), expected)


@given(core_terms(scope=(("y", LIST),)), list_values)
@settings(max_examples=100)
def test_unfolding_agrees_with_substitution(t, value):
    try:
        expected = evaluate_core(subst(t, "y", value))
    except ElamError:
        return
    reduced = bd_reduce(Context().extend("y", Singleton(value, LIST)), t)
    assert alpha_eq(subst(reduced, "y", value), expected)
