"""elam CLI: check, run and inspect programs of the choose calculus."""

import logging
import sys
from typing import Optional

import click
import yaml
from rich.logging import RichHandler

from . import __version__
from .checker import (
    ProgramChecker,
    Session,
    Verdict,
    check_well_formed,
    normalize,
    subtype_verdict,
    untangle,
)
from .checker.program import ProgramReport, runnable_items
from .config import get_config
from .core import (
    Dialect,
    ElamError,
    NotEnumerable,
    ScriptedChooser,
    SeededChooser,
    StuckTerm,
    Undecided,
    check_dialect,
    evaluate,
    explore,
    lower_program,
    lower_type,
)
from .core.syntax import Context, FreshNames
from .frontend import load_source, parse_context, parse_source, parse_term, parse_type
from .frontend.source import ItemKind, SourceFile
from .oracle import includes
from .output import MarkdownReportGenerator, OutputFormatter
from .output.prompts import (
    input_context,
    input_repl_line,
    input_source_path,
    input_type,
    select_main_action,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

formatter = OutputFormatter()
logger = logging.getLogger("elam")


def _configure(verbose: bool) -> None:
    config = get_config()
    config.validate()
    config.apply_runtime_limits()
    level = logging.DEBUG if verbose else getattr(logging, config.log_level.upper())
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=formatter.err_console, show_path=False)],
        force=True,
    )
    formatter.verbose = verbose


def _fuel(fuel: Optional[int]) -> int:
    fuel = get_config().fuel if fuel is None else fuel
    if fuel < 1:
        raise click.BadParameter("fuel must be at least 1", param_hint="--fuel")
    return fuel


def _lowered(ty):
    return ty if check_dialect(ty, Dialect.CORE) else lower_type(ty)


def _surface_type(text: str):
    return _lowered(parse_type(text))


def _core_type(text: str, ctx: Context, fuel: int):
    """Parse a type, lower it if it chooses, and check it is well-formed in ``ctx``."""
    ty = _surface_type(text)
    check_well_formed(ctx, ty, fuel)
    return ty


def _core_context(text: str, fuel: int) -> Context:
    """Each entry must be well-formed under the entries before it."""
    ctx = Context()
    for name, ty in parse_context(text):
        ty = _lowered(ty)
        check_well_formed(ctx, ty, fuel)
        ctx = ctx.extend(name, ty)
    return ctx


def _fail(error: Exception) -> None:
    formatter.print_error(str(error))
    sys.exit(EXIT_USAGE)


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="elam")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging and full per-item output")
@click.pass_context
def main(ctx, verbose: bool):
    """λ elam: dependent singleton types for programs that choose.

    Check .elam programs, evaluate them, inspect their lowering, and query
    normalization and subtyping directly.

    Run without arguments for interactive wizard mode.
    """
    _configure(verbose)
    if ctx.invoked_subcommand is None:
        wizard_mode()


def wizard_mode():
    """Interactive wizard mode."""
    formatter.print_header("elam", "Interactive Mode")

    action = select_main_action()

    if action == "exit":
        formatter.print_info("Goodbye! 👋")
        return

    if action == "check":
        path = input_source_path()
        click.Context(check).invoke(check, files=(path,))
    elif action == "sub":
        left = input_type("Left type (T1):", _surface_type)
        right = input_type("Right type (T2):", _surface_type)
        click.Context(sub).invoke(sub, left=left, right=right, trace=True)
    elif action == "norm":
        ctx_text = input_context(lambda text: _core_context(text, get_config().fuel))
        type_text = input_type("Type to normalize:", _surface_type)
        click.Context(norm).invoke(norm, type_text=type_text, ctx_text=ctx_text, untangle_flag=True)
    elif action == "repl":
        click.Context(repl).invoke(repl)


def _check_files(files, fuel: int, seed: int, trace: bool, parallel: bool, quiet: bool = False) -> list[ProgramReport]:
    checker = ProgramChecker(fuel=fuel, seed=seed, max_choice_depth=get_config().max_choice_depth, trace=trace)
    if quiet:
        return [checker.run(load_source(path), parallel=parallel) for path in files]
    reports = []
    with formatter.create_spinner(f"Checking {len(files)} file(s)...", total=len(files)) as progress:
        (task,) = progress.task_ids
        for path in files:
            progress.update(task, description=f"Checking {path}...")
            reports.append(checker.run(load_source(path), parallel=parallel))
            progress.advance(task)
    return reports


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--fuel", "-f", type=int, default=None, help="Step budget per item (default 10000)")
@click.option("--seed", type=int, default=None, help="Seed for eval items")
@click.option("--trace", "-t", is_flag=True, help="Show subtyping rule traces")
@click.option("--parallel", "-p", is_flag=True, help="Check independent items in parallel")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report")
@click.option("--save", "-s", "save_path", default=None, help="Save report as Markdown file")
def check(files, fuel: Optional[int], seed: Optional[int], trace: bool, parallel: bool, as_json: bool, save_path: Optional[str]):
    """✅ Type check every item of the given .elam files."""
    fuel = _fuel(fuel)
    seed = get_config().seed if seed is None else seed
    logger.debug("checking %d file(s) with fuel %d", len(files), fuel)
    try:
        reports = _check_files(files, fuel, seed, trace, parallel, quiet=as_json)
    except ElamError as e:
        _fail(e)

    if as_json:
        formatter.print_json({"ok": all(r.ok for r in reports), "files": [r.to_dict() for r in reports]})
    else:
        for report in reports:
            formatter.print_program_report(report)

    if save_path:
        written = MarkdownReportGenerator().generate(reports, fuel, save_path)
        if not as_json:
            formatter.print_success(f"💾 Report saved to: {written}")

    sys.exit(EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--fuel", "-f", type=int, default=None, help="Step budget per item")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output")
def infer(file: str, fuel: Optional[int], as_json: bool):
    """🔎 Show the inferred type of each def and check item."""
    fuel = _fuel(fuel)
    try:
        report = ProgramChecker(fuel=fuel).run(load_source(file))
    except ElamError as e:
        _fail(e)

    typed = [r for r in report.items if r.item.kind is not ItemKind.EVAL]
    if as_json:
        formatter.print_json(
            [
                {
                    "line": r.item.line,
                    "item": r.item.describe(),
                    "type": str(r.inferred) if r.inferred is not None else None,
                    "message": r.message,
                }
                for r in typed
            ]
        )
    else:
        for r in typed:
            if r.inferred is not None:
                formatter.print_type(r.inferred, title=f"line {r.item.line}: {r.item.describe()}")
            else:
                formatter.print_warning(f"line {r.item.line}: {r.message}")
    sys.exit(EXIT_OK if all(r.inferred is not None for r in typed) else EXIT_FAILED)


def _load_script(path: str):
    """A YAML list of values in concrete syntax."""
    with open(path, encoding="utf-8") as handle:
        entries = yaml.safe_load(handle) or []
    if not isinstance(entries, list):
        raise click.BadParameter("choice script must be a YAML list", param_hint="--script")
    return [parse_term(str(entry), Dialect.SURFACE) for entry in entries]


@main.command(name="eval")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Seed for the random chooser")
@click.option("--script", "script_path", type=click.Path(exists=True, dir_okay=False), default=None, help="YAML list of values to choose, in order")
@click.option("--all", "explore_all", is_flag=True, help="Enumerate every run with small choices")
@click.option("--fuel", "-f", type=int, default=None, help="Step budget per run")
def eval_command(file: str, seed: Optional[int], script_path: Optional[str], explore_all: bool, fuel: Optional[int]):
    """▶️  Evaluate the eval items of a file, showing values and choices."""
    fuel = _fuel(fuel)
    config = get_config()
    seed = config.seed if seed is None else seed
    if script_path and explore_all:
        raise click.UsageError("--script and --all cannot be combined")
    failed = False
    try:
        scripted = ScriptedChooser(_load_script(script_path)) if script_path else None
        # definitions run once, before any eval item, on the same chooser
        items = runnable_items(load_source(file), scripted or SeededChooser(seed, config.max_choice_depth), fuel)
        if not items:
            formatter.print_info("no eval items")
        for item, term in items:
            formatter.print_info(f"line {item.line}: {item.describe()}")
            try:
                if term.fv:
                    raise StuckTerm(term, "no value for " + ", ".join(sorted(term.fv)))
                if explore_all:
                    formatter.print_runs(explore(term, fuel=fuel))
                else:
                    chooser = scripted or SeededChooser(seed, config.max_choice_depth)
                    formatter.print_value(evaluate(term, chooser, fuel))
            except ElamError as e:
                failed = True
                formatter.print_warning(str(e))
    except ElamError as e:
        _fail(e)
    sys.exit(EXIT_FAILED if failed else EXIT_OK)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def lower(file: str):
    """⬇️  Print the choose-free lowering of every item."""
    try:
        source = load_source(file)
    except ElamError as e:
        _fail(e)
    names = FreshNames()
    for item in source:
        names.reserve_from(item.term)
    for item in source:
        lowered = lower_program(item.term, names)
        if item.kind is ItemKind.CHECK:
            formatter.print_plain(f"check {lowered} : {lower_type(item.annot, names)}")
        elif item.kind is ItemKind.DEF:
            formatter.print_plain(f"def {item.name} = {lowered}")
        else:
            formatter.print_plain(f"eval {lowered}")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--type", "type_text", required=True, help="Type to normalize")
@click.option("--ctx", "ctx_text", default="", help='Context, e.g. "x: {nil : List}, y: List"')
@click.option("--untangle", "untangle_flag", is_flag=True, help="Also untangle trail existentials")
@click.option("--fuel", "-f", type=int, default=None, help="Step budget")
def norm(type_text: str, ctx_text: str, untangle_flag: bool, fuel: Optional[int] = None):
    """🔧 Normalize a type under a context."""
    fuel = _fuel(fuel)
    try:
        ctx = _core_context(ctx_text, fuel)
        result = normalize(ctx, _core_type(type_text, ctx, fuel), fuel)
        if untangle_flag:
            result = untangle(result)
    except ElamError as e:
        _fail(e)
    formatter.print_plain(str(result))
    sys.exit(EXIT_OK)


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--ctx", "ctx_text", default="", help="Context for both types")
@click.option("--trace", "-t", is_flag=True, help="Show the rule trace")
@click.option("--oracle", "use_oracle", is_flag=True, help="Cross-check with the bounded membership oracle")
@click.option("--fuel", "-f", type=int, default=None, help="Step budget")
def sub(left: str, right: str, ctx_text: str = "", trace: bool = False, use_oracle: bool = False, fuel: Optional[int] = None):
    """⊆ Decide whether LEFT is a subtype of RIGHT."""
    fuel = _fuel(fuel)
    try:
        ctx = _core_context(ctx_text, fuel)
        t1, t2 = _core_type(left, ctx, fuel), _core_type(right, ctx, fuel)
        session = Session(fuel, trace=trace)
        verdict = subtype_verdict(ctx, t1, t2, session)
    except ElamError as e:
        _fail(e)

    formatter.print_verdict(verdict, t1, t2)
    if trace:
        formatter.print_trace(session.roots)
    if use_oracle:
        if t1.fv or t2.fv:
            formatter.print_warning("oracle only handles closed types")
        else:
            try:
                formatter.print_inclusion(includes(t1, t2, get_config().budget()))
            except (NotEnumerable, Undecided) as e:
                formatter.print_warning(f"oracle: {e}")
    sys.exit(EXIT_OK if verdict is Verdict.HOLDS else EXIT_FAILED)


@main.command()
@click.option("--fuel", "-f", type=int, default=None, help="Step budget per item")
def repl(fuel: Optional[int] = None):
    """💬 Enter def/check/eval items one at a time (:ctx, :quit)."""
    fuel = _fuel(fuel)
    config = get_config()
    checker = ProgramChecker(fuel=fuel, seed=config.seed, max_choice_depth=config.max_choice_depth)
    session = SourceFile(path="<repl>")
    formatter.print_info("Enter items such as `def id = \\(x: Top) => x`; :ctx lists definitions, :quit exits.")
    while True:
        line = input_repl_line()
        if line is None or line.strip() == ":quit":
            break
        if not line.strip():
            continue
        if line.strip() == ":ctx":
            for item in session:
                if item.kind is ItemKind.DEF:
                    formatter.print_plain(item.describe())
            continue
        try:
            new_items = parse_source(line).items
        except ElamError as e:
            formatter.print_error(str(e))
            continue
        candidate = SourceFile(session.items + new_items, session.path)
        report = checker.run(candidate)
        formatter.print_program_report(ProgramReport(report.items[len(session.items):], session.path))
        session = candidate
    formatter.print_info("Goodbye! 👋")


# Short command aliases
main.add_command(check, name="c")
main.add_command(infer, name="i")
main.add_command(eval_command, name="e")
main.add_command(lower, name="l")
main.add_command(norm, name="n")
main.add_command(sub, name="s")
main.add_command(repl, name="r")


if __name__ == "__main__":
    main()
