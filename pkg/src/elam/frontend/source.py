"""``.elam`` program files: ``def``, ``check`` and ``eval`` items."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Union

from ..core.errors import DialectError, ParseError
from ..core.syntax import Dialect, Term, Type, dialect_violation
from .parser import parse_tree, transform


class ItemKind(Enum):
    DEF = "def"
    CHECK = "check"
    EVAL = "eval"


@dataclass(frozen=True)
class Item:
    kind: ItemKind
    term: Term
    name: Optional[str] = None
    annot: Optional[Type] = None
    line: Optional[int] = None

    def describe(self) -> str:
        if self.kind is ItemKind.DEF:
            return f"def {self.name} = {self.term}"
        if self.kind is ItemKind.CHECK:
            return f"check {self.term} : {self.annot}"
        return f"eval {self.term}"


@dataclass
class SourceFile:
    items: list[Item] = field(default_factory=list)
    path: Optional[str] = None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


_KINDS = {"def_item": ItemKind.DEF, "check_item": ItemKind.CHECK, "eval_item": ItemKind.EVAL}


def _item(tree) -> Item:
    kind = _KINDS[tree.data]
    line = tree.meta.line if not tree.meta.empty else None
    parts = transform(tree).children
    for part in parts:
        if not isinstance(part, str):
            offending = dialect_violation(part, Dialect.SURFACE)
            if offending is not None:
                where = f" (line {line})" if line is not None else ""
                raise DialectError(f"{offending} is not part of the surface language{where}")
    if kind is ItemKind.DEF:
        name, term = parts
        return Item(kind, term, name=name, line=line)
    if kind is ItemKind.CHECK:
        term, annot = parts
        return Item(kind, term, annot=annot, line=line)
    return Item(kind, parts[0], line=line)


def parse_source(text: str, path: Optional[str] = None) -> SourceFile:
    """Parse a whole ``.elam`` file; programs are written in the surface language."""
    tree = parse_tree(text, "start_file")
    return SourceFile([_item(child) for child in tree.children], path)


def load_source(path: Union[str, Path]) -> SourceFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_source(text, str(path))
