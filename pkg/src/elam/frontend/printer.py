"""Pretty-printing of terms and types in the concrete syntax accepted by the parser."""

from __future__ import annotations

from ..core import trail as trails
from ..core.syntax import (
    Abs,
    App,
    Base,
    Choose,
    Cons,
    ConsT,
    Exists,
    Fix,
    Match,
    MatchT,
    Nil,
    Node,
    Pi,
    Sel,
    Singleton,
    Term,
    TrailLit,
    Type,
    Unpack,
    Var,
)

# precedence levels: 0 binders, 1 application/cons, 2 selection, 3 atoms
_BINDER, _APP, _SEL, _ATOM = range(4)


def _term_level(t: Term) -> int:
    if isinstance(t, Abs):
        return _BINDER
    if isinstance(t, (App, Cons)):
        return _APP
    if isinstance(t, Sel):
        return _SEL
    return _ATOM


def _type_level(ty: Type) -> int:
    if isinstance(ty, (Pi, Exists)):
        return _BINDER
    if isinstance(ty, ConsT):
        return _APP
    return _ATOM


def format_trail(tree) -> str:
    """``<.1=nil:Top, .2=cons nil nil:List>``; trails never appear in parsed source."""
    leaves = [
        f"{trails.format_path(path)}={print_term(leaf.value)}:{leaf.tag.value}"
        for path, leaf in trails.trail_paths(tree)
    ]
    return "<" + ", ".join(leaves) + ">"


def _term(t: Term, level: int) -> str:
    match t:
        case Var(name):
            text = name
        case Nil():
            text = "nil"
        case Abs(binder, annot, body):
            text = f"\\({binder}: {_type(annot, _BINDER)}) => {_term(body, _BINDER)}"
        case App(fn, arg):
            text = f"{_term(fn, _APP)} {_term(arg, _SEL)}"
        case Cons(head, tail):
            text = f"cons {_term(head, _SEL)} {_term(tail, _SEL)}"
        case Sel(target, index):
            text = f"{_term(target, _SEL)}.{index}"
        case Choose(base):
            text = f"choose[{base.value}]"
        case Unpack(base, arg):
            text = f"unpack[{base.value}]({_term(arg, _BINDER)})"
        case Match(scrutinee, nil_case, hd, tl, cons_case):
            text = (
                f"match {_term(scrutinee, _APP)} {{ nil => {_term(nil_case, _BINDER)}; "
                f"cons {hd} {tl} => {_term(cons_case, _BINDER)} }}"
            )
        case Fix(bound, binder, annot, body, default):
            text = (
                f"fix[{bound}]({binder}: {_type(annot, _BINDER)} => "
                f"{_term(body, _BINDER)}, {_term(default, _BINDER)})"
            )
        case TrailLit(tree):
            text = format_trail(tree)
        case _:
            raise TypeError(f"not a term: {t!r}")
    return f"({text})" if _term_level(t) < level else text


def _type(ty: Type, level: int) -> str:
    match ty:
        case Base(kind):
            text = kind.value
        case Singleton(term, underlying):
            text = f"{{ {_term(term, _BINDER)} : {_type(underlying, _BINDER)} }}"
        case Pi(binder, domain, codomain):
            text = f"Pi({binder}: {_type(domain, _BINDER)}) => {_type(codomain, _BINDER)}"
        case Exists(binder, domain, body):
            text = f"exists({binder}: {_type(domain, _BINDER)}) => {_type(body, _BINDER)}"
        case ConsT(head, tail):
            text = f"Cons {_type(head, _ATOM)} {_type(tail, _ATOM)}"
        case MatchT(scrutinee, nil_type, hd, tl, cons_type):
            text = (
                f"Match {_term(scrutinee, _APP)} {{ nil => {_type(nil_type, _BINDER)}; "
                f"cons {hd} {tl} => {_type(cons_type, _BINDER)} }}"
            )
        case _:
            raise TypeError(f"not a type: {ty!r}")
    return f"({text})" if _type_level(ty) < level else text


def print_term(t: Term) -> str:
    return _term(t, _BINDER)


def print_type(ty: Type) -> str:
    return _type(ty, _BINDER)


def print_node(node: Node) -> str:
    return print_term(node) if isinstance(node, Term) else print_type(node)
