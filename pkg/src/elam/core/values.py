"""Value predicates and first-order value enumeration."""

from __future__ import annotations

from functools import lru_cache

from .syntax import Abs, Cons, Nil, Sel, Term, TrailLit, Unpack, Var, is_trail_chain


def is_value(term: Term) -> bool:
    """Values of both calculi.

    Selections and unpacks of trail variables are values: they only compute
    once a trail literal is substituted for the variable.
    """
    match term:
        case Var() | Abs() | Nil() | TrailLit():
            return True
        case Cons(head, tail):
            return is_value(head) and is_value(tail)
        case Sel(target, _):
            return is_trail_chain(target)
        case Unpack(_, arg):
            return is_trail_chain(arg)
    return False


def is_list_value(term: Term) -> bool:
    """A nil-terminated cons spine; elements may be any value."""
    while isinstance(term, Cons):
        term = term.tail
    return isinstance(term, Nil)


def is_first_order(term: Term) -> bool:
    """Closed values built from nil and cons only."""
    match term:
        case Nil():
            return True
        case Cons(head, tail):
            return is_first_order(head) and is_first_order(tail)
    return False


def value_size(term: Term) -> int:
    """1 + number of cons cells."""
    size = 1
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, Cons):
            size += 1
            stack.extend((current.head, current.tail))
    return size


def list_length(term: Term) -> int:
    length = 0
    while isinstance(term, Cons):
        length += 1
        term = term.tail
    return length


def list_of(elements) -> Term:
    """Build the list value with the given elements."""
    result: Term = Nil()
    for element in reversed(list(elements)):
        result = Cons(element, result)
    return result


@lru_cache(maxsize=None)
def _values_of_cells(cells: int) -> tuple[Term, ...]:
    """First-order list values with exactly ``cells`` cons cells."""
    if cells == 0:
        return (Nil(),)
    result = []
    for head_cells in range(cells):
        for head in _values_of_cells(head_cells):
            for tail in _values_of_cells(cells - 1 - head_cells):
                result.append(Cons(head, tail))
    return tuple(result)


def list_values(max_size: int) -> list[Term]:
    """All first-order list values of size at most ``max_size``, smallest first."""
    if max_size < 1:
        raise ValueError(f"max_size must be at least 1, got {max_size}")
    values: list[Term] = []
    for cells in range(max_size):
        values.extend(_values_of_cells(cells))
    return values
