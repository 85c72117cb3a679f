"""Rich terminal output for reports, types, values and rule traces."""

import json
from typing import Iterable, Optional

from rich import box
from rich.align import Align
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table
from rich.text import Text
from rich.tree import Tree

from ..checker.program import ItemReport, ProgramReport, Status
from ..checker.session import TraceNode, Verdict
from ..core.evaluator import ChoiceLog, EvalResult
from ..core.trail import format_path
from ..oracle import InclusionSummary

console = Console()
err_console = Console(stderr=True)

_STATUS_STYLE = {
    Status.PASS: ("✓", "green"),
    Status.FAIL: ("✗", "red"),
    Status.UNKNOWN: ("?", "yellow"),
}

_VERDICT_STYLE = {
    Verdict.HOLDS: ("holds", "green"),
    Verdict.FAILS: ("does not hold", "red"),
    Verdict.UNKNOWN: ("unknown (out of fuel)", "yellow"),
}


class OutputFormatter:
    """Formats pipeline results for the terminal using Rich."""

    def __init__(self, verbose: bool = False):
        self.console = console
        self.err_console = err_console
        self.verbose = verbose

    def print_header(self, title: str, subtitle: Optional[str] = None) -> None:
        header_text = Text()
        header_text.append("λ ", style="bold")
        header_text.append(title, style="bold cyan")
        self.console.print()
        self.console.print(
            Panel(
                Align.center(header_text),
                subtitle=subtitle,
                style="cyan",
                box=box.DOUBLE_EDGE,
                padding=(1, 2),
            )
        )
        self.console.print()

    def print_plain(self, text: str) -> None:
        """Unstyled, unwrapped output for results other tools may parse."""
        self.console.print(text, soft_wrap=True, highlight=False, markup=False, emoji=False)

    def print_json(self, data) -> None:
        self.print_plain(json.dumps(data, indent=2, ensure_ascii=False))

    # --- programs ------------------------------------------------------------

    def print_program_report(self, report: ProgramReport) -> None:
        """Per-item results followed by a one-line summary."""
        if not report.items:
            self.print_info(f"{report.path or 'input'}: no items")
            return

        table = Table(
            show_header=True,
            header_style="bold magenta",
            box=box.ROUNDED,
            title=report.path or "Program",
            title_style="bold",
        )
        table.add_column("Line", style="dim", justify="right")
        table.add_column("", width=1)
        table.add_column("Item", style="white", overflow="fold")
        table.add_column("Result", overflow="fold")

        for item_report in report.items:
            icon, style = _STATUS_STYLE[item_report.status]
            table.add_row(
                str(item_report.item.line or ""),
                f"[{style}]{icon}[/]",
                Text(item_report.item.describe()),
                Text(self._result_text(item_report), style=style if not item_report.passed else ""),
            )
        self.console.print(table)

        for item_report in report.items:
            if item_report.trace and (self.verbose or not item_report.passed):
                self.print_trace(item_report.trace, title=f"line {item_report.item.line}")

        summary = f"{report.passed} passed, {report.failed} failed, {report.unknown} unknown"
        if report.ok:
            self.print_success(summary)
        else:
            self.print_warning(summary)

    def _result_text(self, item_report: ItemReport) -> str:
        if item_report.status is not Status.PASS:
            return item_report.message
        if item_report.item.name and item_report.inferred is not None:
            return str(item_report.inferred)
        if item_report.value is not None:
            return str(item_report.value)
        if item_report.inferred is not None and self.verbose:
            return str(item_report.inferred)
        return "ok"

    def print_trace(self, roots: Iterable[TraceNode], title: str = "Subtyping trace") -> None:
        tree = Tree(f"[bold cyan]{title}[/]", guide_style="dim")

        def add(parent: Tree, node: TraceNode) -> None:
            mark = "[green]✓[/]" if node.ok else "[red]✗[/]"
            label = Text.from_markup(f"{mark} [dim]{node.rule or '?'}[/] ")
            label.append(node.goal)
            branch = parent.add(label)
            for child in node.children:
                add(branch, child)

        for root in roots:
            add(tree, root)
        self.console.print(tree)

    # --- single results -------------------------------------------------------

    def print_type(self, ty, title: str = "Type") -> None:
        self.console.print(Panel(Text(str(ty)), title=title, border_style="cyan", box=box.ROUNDED))

    def print_verdict(self, verdict: Verdict, left, right) -> None:
        text, style = _VERDICT_STYLE[verdict]
        message = Text()
        message.append(str(left))
        message.append("  <:  ", style="bold")
        message.append(str(right))
        self.console.print(Panel(message, title=f"[{style}]{text}[/]", border_style=style, box=box.ROUNDED))

    def print_value(self, result: EvalResult) -> None:
        self.console.print(
            Panel(Text(str(result.value), style="bold"), title="Value", border_style="green", box=box.ROUNDED)
        )
        self.print_choice_log(result.log)

    def print_choice_log(self, log: ChoiceLog) -> None:
        if not len(log):
            self.console.print("[dim]no choices were made[/]")
            return
        table = Table(box=box.ROUNDED, header_style="bold cyan", title="Choices", title_style="bold")
        table.add_column("#", style="dim", justify="right")
        table.add_column("Site", style="magenta")
        table.add_column("Base")
        table.add_column("Value", overflow="fold")
        for i, entry in enumerate(log, 1):
            table.add_row(str(i), format_path(entry.path), entry.base.value, str(entry.value))
        self.console.print(table)

    def print_runs(self, results: list[EvalResult]) -> None:
        """Outcomes of an exhaustive exploration, one row per run."""
        table = Table(box=box.ROUNDED, header_style="bold cyan", title=f"{len(results)} run(s)", title_style="bold")
        table.add_column("#", style="dim", justify="right")
        table.add_column("Choices", overflow="fold")
        table.add_column("Value", overflow="fold")
        for i, result in enumerate(results, 1):
            choices = ", ".join(f"{format_path(e.path)}={e.value}" for e in result.log) or "-"
            table.add_row(str(i), choices, str(result.value))
        self.console.print(table)

    def print_inclusion(self, summary: InclusionSummary) -> None:
        style = "green" if summary.holds else "red"
        self.console.print(
            f"[{style}]oracle:[/] {summary.checked} member(s) confirmed, "
            f"{summary.skipped} undecided, {len(summary.counterexamples)} counterexample(s)"
        )
        for value in summary.counterexamples[:5]:
            self.console.print(f"  [red]•[/] {escape(str(value))}")

    # --- messages ------------------------------------------------------------

    def print_error(self, message: str) -> None:
        self.err_console.print(
            Panel(Text(f"❌ {message}", style="bold red"), border_style="red", box=box.ROUNDED)
        )

    def print_warning(self, message: str) -> None:
        self.console.print(f"[yellow]⚠️  {escape(message)}[/]")

    def print_info(self, message: str) -> None:
        self.console.print(f"[blue]ℹ️  {escape(message)}[/]")

    def print_success(self, message: str) -> None:
        self.console.print(f"[green]✅ {escape(message)}[/]")

    def create_spinner(self, message: str = "Checking...", total: Optional[int] = None) -> Progress:
        """A transient spinner whose first task starts out showing ``message``."""
        progress = Progress(
            SpinnerColumn(style="cyan"),
            TextColumn("[cyan]{task.description}"),
            console=self.console,
            transient=True,
        )
        progress.add_task(message, total=total)
        return progress
