"""Lark-based parser for terms, types, contexts and .elam files."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from ..core.errors import DialectError, ElamError, ParseError
from ..core.syntax import (
    LIST,
    TOP,
    TRAIL,
    Abs,
    App,
    BaseKind,
    Choose,
    Cons,
    ConsT,
    Context,
    Dialect,
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
    Type,
    Unpack,
    Var,
    dialect_violation,
)

_STARTS = ["start_term", "start_type", "start_file", "start_context"]


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark.open(
        "grammar.lark",
        rel_to=__file__,
        parser="lalr",
        lexer="contextual",
        start=_STARTS,
        propagate_positions=True,
        maybe_placeholders=False,
    )


@v_args(inline=True)
class ToAst(Transformer):
    """Turns parse trees into syntax nodes."""

    def start_term(self, term):
        return term

    start_type = start_term

    def start_context(self, *bindings):
        ctx = Context()
        for name, ty in bindings:
            ctx = ctx.extend(name, ty)
        return ctx

    def binding(self, name, ty):
        return str(name), ty

    def NAME(self, token: Token) -> str:
        return str(token)

    # terms

    def var(self, name):
        return Var(name)

    def abs(self, binder, annot, body):
        return Abs(binder, annot, body)

    def app(self, fn, arg):
        return App(fn, arg)

    def cons(self, head, tail):
        return Cons(head, tail)

    def sel(self, target, index):
        return Sel(target, int(index))

    def nil(self):
        return Nil()

    def base(self, token):
        return BaseKind.TOP if str(token) == "Top" else BaseKind.LIST

    def choose(self, base):
        return Choose(base)

    def unpack(self, base, arg):
        return Unpack(base, arg)

    def match(self, scrutinee, nil_case, hd, tl, cons_case):
        return Match(scrutinee, nil_case, hd, tl, cons_case)

    def fix(self, bound, binder, annot, body, default):
        return Fix(int(bound), binder, annot, body, default)

    # types

    def top(self):
        return TOP

    def list(self):
        return LIST

    def trail(self):
        return TRAIL

    def singleton(self, term, underlying):
        return Singleton(term, underlying)

    def pi(self, binder, domain, codomain):
        return Pi(binder, domain, codomain)

    def exists(self, binder, domain, body):
        return Exists(binder, domain, body)

    def cons_t(self, head, tail):
        return ConsT(head, tail)

    def match_t(self, scrutinee, nil_type, hd, tl, cons_type):
        return MatchT(scrutinee, nil_type, hd, tl, cons_type)


def _readable(names) -> set[str]:
    parser = _parser()
    readable = set()
    for name in names:
        try:
            pattern = parser.get_terminal(name).pattern
        except KeyError:
            readable.add(name)
            continue
        readable.add(f'"{pattern.value}"' if pattern.type == "str" else name)
    return readable


def _to_parse_error(exc: UnexpectedInput) -> ParseError:
    if isinstance(exc, UnexpectedCharacters):
        expected = exc.allowed or ()
        message = f"unexpected character {exc.char!r}"
    elif isinstance(exc, UnexpectedEOF):
        expected = exc.expected
        message = "unexpected end of input"
    else:
        expected = getattr(exc, "expected", ()) or ()
        token = getattr(exc, "token", None)
        message = f"unexpected token {str(token)!r}" if token is not None else "syntax error"
    line = getattr(exc, "line", None)
    column = getattr(exc, "column", None)
    if line is not None and line < 0:
        line = column = None
    return ParseError(message, line, column, _readable(expected))


def parse_tree(text: str, start: str):
    """Parse ``text`` from one of the grammar's start symbols; returns the raw Lark tree."""
    try:
        return _parser().parse(text, start=start)
    except UnexpectedInput as exc:
        raise _to_parse_error(exc) from exc


def transform(tree):
    try:
        return ToAst().transform(tree)
    except VisitError as exc:
        # constructors validate (fix bounds, duplicate context names)
        if isinstance(exc.orig_exc, ElamError):
            raise exc.orig_exc from exc
        meta = getattr(exc.obj, "meta", None)
        line = getattr(meta, "line", None)
        column = getattr(meta, "column", None)
        raise ParseError(str(exc.orig_exc), line, column) from exc


def _enforce(node: Node, dialect: Optional[Dialect]) -> Node:
    if dialect is not None:
        offending = dialect_violation(node, dialect)
        if offending is not None:
            raise DialectError(f"{offending} is not part of the {dialect.value} language")
    return node


def parse_term(text: str, dialect: Optional[Dialect] = None) -> Term:
    """Parse a term; with ``dialect`` set, constructs of the other calculus are rejected."""
    return _enforce(transform(parse_tree(text, "start_term")), dialect)


def parse_type(text: str, dialect: Optional[Dialect] = None) -> Type:
    return _enforce(transform(parse_tree(text, "start_type")), dialect)


def parse_context(text: str) -> Context:
    """Parse ``x: T, y: U`` into a context (later bindings may mention earlier names)."""
    if not text.strip():
        return Context()
    return transform(parse_tree(text, "start_context"))
