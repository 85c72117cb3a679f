"""Trails: ternary trees of tagged values recording one run's choices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import PrefixClash
from .syntax import BaseKind, Nil, Path, Term


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Leaf:
    tag: BaseKind
    value: Term


@dataclass(frozen=True)
class Node:
    child1: "Trail"
    child2: "Trail"
    child3: "Trail"

    def child(self, index: int) -> "Trail":
        return (self.child1, self.child2, self.child3)[index - 1]


Trail = Union[Empty, Leaf, Node]

EMPTY = Empty()


def _check_path(path: Path) -> None:
    for index in path:
        if index not in (1, 2, 3):
            raise ValueError(f"selection index must be 1, 2 or 3, got {index}")


def select(tree: Trail, path: Path) -> Trail:
    """Subtree at ``path``; running off the tree yields the empty trail."""
    _check_path(path)
    for index in path:
        if not isinstance(tree, Node):
            return EMPTY
        tree = tree.child(index)
    return tree


def update(tree: Trail, path: Path, replacement: Trail) -> Trail:
    """Replace the subtree at ``path``, creating nodes with empty siblings as needed."""
    _check_path(path)
    if not path:
        return replacement
    node = tree if isinstance(tree, Node) else Node(EMPTY, EMPTY, EMPTY)
    children = [node.child1, node.child2, node.child3]
    head, rest = path[0], path[1:]
    children[head - 1] = update(children[head - 1], rest, replacement)
    return Node(*children)


def unpack(base: BaseKind, tree: Trail) -> Term:
    """Value at the root when its tag is ``base``; nil otherwise."""
    if isinstance(tree, Leaf) and tree.tag is base:
        return tree.value
    return Nil()


def trail_of_log(entries: Iterable) -> Trail:
    """Install every logged choice as a leaf at its site path.

    Entries are ``ChoiceEntry`` records (anything with ``path``, ``base`` and
    ``value``). Sites must be pairwise non-prefix.
    """
    tree: Trail = EMPTY
    seen: list[Path] = []
    for entry in entries:
        for other in seen:
            shorter = min(len(other), len(entry.path))
            if other[:shorter] == entry.path[:shorter]:
                raise PrefixClash(
                    f"choice sites {format_path(other)} and {format_path(entry.path)} overlap"
                )
        seen.append(entry.path)
        tree = update(tree, entry.path, Leaf(entry.base, entry.value))
    return tree


def trail_paths(tree: Trail, prefix: Path = ()) -> Iterator[tuple[Path, Leaf]]:
    """Leaves of ``tree`` with their paths, left to right."""
    if isinstance(tree, Leaf):
        yield prefix, tree
    elif isinstance(tree, Node):
        for index in (1, 2, 3):
            yield from trail_paths(tree.child(index), prefix + (index,))


def format_path(path: Path) -> str:
    return "".join(f".{index}" for index in path) or "ε"


def parse_path(text: str) -> Path:
    """Inverse of ``format_path``; accepts ``.1.3``, ``1.3`` or ``ε``."""
    text = text.strip()
    if text in ("", "ε"):
        return ()
    try:
        path = tuple(int(part) for part in text.strip(".").split("."))
    except ValueError:
        raise ValueError(f"Invalid selection path: {text!r}") from None
    _check_path(path)
    return path
