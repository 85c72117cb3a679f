"""Concrete syntax: parsing and printing."""

from .parser import parse_context, parse_term, parse_type
from .printer import format_trail, print_node, print_term, print_type
from .source import Item, ItemKind, SourceFile, load_source, parse_source

__all__ = [
    "Item",
    "ItemKind",
    "SourceFile",
    "format_trail",
    "load_source",
    "parse_context",
    "parse_source",
    "parse_term",
    "parse_type",
    "print_node",
    "print_term",
    "print_type",
]
