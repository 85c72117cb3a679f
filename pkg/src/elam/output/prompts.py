"""Interactive prompts using InquirerPy for the wizard and the REPL."""

from pathlib import Path
from typing import Callable, Optional

from InquirerPy import inquirer
from InquirerPy.base.control import Choice
from InquirerPy.separator import Separator

from ..core.errors import ElamError


def select_main_action() -> str:
    """Main menu of the wizard; returns check, sub, norm, repl or exit."""
    choices = [
        Choice(value="check", name="✅ Check - Type check an .elam file"),
        Choice(value="sub", name="⊆  Subtype - Compare two types"),
        Choice(value="norm", name="🔧 Normalize - Normalize and untangle a type"),
        Choice(value="repl", name="💬 REPL - Enter items one at a time"),
        Separator(),
        Choice(value="exit", name="👋 Exit"),
    ]

    return inquirer.select(
        message="What would you like to do?",
        choices=choices,
        default="check",
    ).execute()


def _parses(parse: Callable[[str], object]) -> Callable[[str], bool]:
    def validate(text: str) -> bool:
        try:
            parse(text)
        except (ElamError, ValueError):
            return False
        return True

    return validate


def input_source_path(default: str = "") -> str:
    """Ask for an existing .elam file."""
    return inquirer.filepath(
        message="Program file:",
        default=default,
        validate=lambda path: Path(path).is_file(),
        invalid_message="No such file",
    ).execute()


def input_type(message: str, parse: Callable[[str], object], default: str = "") -> str:
    """Ask for a type, re-prompting until it parses."""
    return inquirer.text(
        message=message,
        default=default,
        validate=_parses(parse),
        invalid_message="Not a type in the concrete syntax",
    ).execute()


def input_context(parse: Callable[[str], object]) -> str:
    return inquirer.text(
        message="Context (x: T, y: U; empty for none):",
        default="",
        validate=_parses(parse),
        invalid_message="Not a context in the concrete syntax",
    ).execute()


def input_repl_line() -> Optional[str]:
    """One REPL line; None on end of input."""
    try:
        return inquirer.text(message="elam>", qmark="", amark="").execute()
    except (EOFError, KeyboardInterrupt):
        return None
