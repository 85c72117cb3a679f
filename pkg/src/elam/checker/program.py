"""Checking and running whole ``.elam`` files item by item."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..core.errors import ElamError, InferFailure, OutOfFuel
from ..core.evaluator import ChoiceLog, Chooser, SeededChooser, evaluate
from ..core.lower import lower_term, lower_type
from ..core.syntax import TRAIL, Context, FreshNames, Term, Type, Var, subst
from ..core.trail import format_path
from ..frontend.source import Item, ItemKind, SourceFile
from .infer import check_in, check_well_formed_in, infer_in
from .session import Session, TraceNode

logger = logging.getLogger(__name__)


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass
class ItemReport:
    item: Item
    status: Status
    message: str = ""
    lowered: Optional[Term] = None
    lowered_type: Optional[Type] = None
    inferred: Optional[Type] = None
    value: Optional[Term] = None
    log: Optional[ChoiceLog] = None
    trace: list[TraceNode] = field(default_factory=list)
    fuel_used: int = 0

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        """Stable JSON-ready summary."""
        data = {
            "kind": self.item.kind.value,
            "line": self.item.line,
            "item": self.item.describe(),
            "status": self.status.value,
            "message": self.message,
            "fuel_used": self.fuel_used,
        }
        if self.item.name is not None:
            data["name"] = self.item.name
        if self.inferred is not None:
            data["type"] = str(self.inferred)
        if self.value is not None:
            data["value"] = str(self.value)
        if self.log is not None:
            data["choices"] = [
                {"path": format_path(entry.path), "base": entry.base.value, "value": str(entry.value)}
                for entry in self.log
            ]
        return data


@dataclass
class ProgramReport:
    items: list[ItemReport] = field(default_factory=list)
    path: Optional[str] = None

    @property
    def passed(self) -> int:
        return sum(1 for report in self.items if report.status is Status.PASS)

    @property
    def failed(self) -> int:
        return sum(1 for report in self.items if report.status is Status.FAIL)

    @property
    def unknown(self) -> int:
        return sum(1 for report in self.items if report.status is Status.UNKNOWN)

    @property
    def ok(self) -> bool:
        return all(report.passed for report in self.items)

    def to_dict(self) -> dict:
        return {
            "file": self.path,
            "summary": {
                "items": len(self.items),
                "passed": self.passed,
                "failed": self.failed,
                "unknown": self.unknown,
            },
            "items": [report.to_dict() for report in self.items],
        }


@dataclass
class _Job:
    """A check item with everything it needs, prepared in file order."""

    index: int
    item: Item
    ctx: Context
    lowered: Term
    lowered_type: Type


class ProgramChecker:
    """Drives lowering, inference and evaluation over the items of one file.

    ``def`` items extend the ambient context with their inferred singleton
    type, each under a fresh trail variable of its own. ``check`` items are
    lowered under a fresh trail too, so the verdict covers every run.
    """

    def __init__(self, fuel: int = 10000, seed: int = 0, max_choice_depth: int = 3, trace: bool = False):
        self.fuel = fuel
        self.seed = seed
        self.max_choice_depth = max_choice_depth
        self.trace = trace

    def _session(self, ctx: Context, *nodes) -> Session:
        return Session(self.fuel, trace=self.trace).reserve(*nodes, ctx=ctx)

    def _check(self, job: _Job) -> ItemReport:
        s = self._session(job.ctx, job.lowered, job.lowered_type)
        report = ItemReport(job.item, Status.FAIL, lowered=job.lowered, lowered_type=job.lowered_type)
        try:
            check_well_formed_in(job.ctx, job.lowered_type, s)
            report.inferred = infer_in(job.ctx, job.lowered, s)
            holds = check_in(job.ctx, job.lowered, job.lowered_type, s)
        except OutOfFuel:
            report.status, report.message = Status.UNKNOWN, f"ran out of fuel after {s.fuel.used} steps"
        except InferFailure as exc:
            report.message = str(exc.at(job.item.line))
        else:
            report.status = Status.PASS if holds else Status.FAIL
            if not holds:
                report.message = f"{job.lowered} does not check against {job.lowered_type}"
        report.trace, report.fuel_used = s.roots, s.fuel.used
        logger.debug("item at line %s: %s", job.item.line, report.status.value)
        return report

    def _eval(self, item: Item, values: list[tuple[str, Term]]) -> ItemReport:
        term = inline_definitions(item.term, values)
        report = ItemReport(item, Status.FAIL)
        if term.fv:
            report.message = f"line {item.line}: no value for " + ", ".join(sorted(term.fv))
            return report
        try:
            result = evaluate(term, SeededChooser(self.seed, self.max_choice_depth), self.fuel)
        except OutOfFuel:
            report.status, report.message = Status.UNKNOWN, "ran out of fuel"
        except ElamError as exc:
            report.message = str(exc)
        else:
            report.status, report.value, report.log = Status.PASS, result.value, result.log
        return report

    def run(
        self,
        source: SourceFile,
        parallel: bool = False,
    ) -> ProgramReport:
        names = FreshNames()
        for item in source:
            names.reserve_from(item.term)
            if item.annot is not None:
                names.reserve_from(item.annot)
            if item.name is not None:
                names.reserve((item.name,))

        ctx = Context()
        # each def body runs once; its value is shared by every later use
        values: list[tuple[str, Term]] = []
        def_chooser = SeededChooser(self.seed, self.max_choice_depth)
        results: dict[int, ItemReport] = {}
        jobs: list[_Job] = []

        for index, item in enumerate(source):
            if item.kind is ItemKind.EVAL:
                results[index] = self._eval(item, values)
                continue
            z = names.fresh("z")
            lowered = lower_term(Var(z), item.term, names)
            if item.kind is ItemKind.CHECK:
                jobs.append(_Job(index, item, ctx.extend(z, TRAIL), lowered, lower_type(item.annot, names)))
                continue
            results[index] = self._define(item, ctx, z, lowered)
            if results[index].passed:
                ctx = ctx.extend(z, TRAIL).extend(item.name, results[index].inferred)
                self._run_definition(results[index], values, def_chooser)

        if parallel and len(jobs) > 1:
            with ThreadPoolExecutor() as pool:
                for job, report in zip(jobs, pool.map(self._check, jobs)):
                    results[job.index] = report
        else:
            for job in jobs:
                results[job.index] = self._check(job)

        return ProgramReport([results[i] for i in sorted(results)], source.path)

    def _run_definition(self, report: ItemReport, values: list[tuple[str, Term]], chooser: Chooser) -> None:
        item = report.item
        try:
            result = evaluate(inline_definitions(item.term, values), chooser, self.fuel)
        except ElamError as exc:
            report.message = f"no value: {exc}"
            logger.warning("def %s at line %s has no value: %s", item.name, item.line, exc)
            return
        report.value, report.log = result.value, result.log
        values.append((item.name, result.value))

    def _define(self, item: Item, ctx: Context, z: str, lowered: Term) -> ItemReport:
        report = ItemReport(item, Status.FAIL, lowered=lowered)
        if item.name in ctx:
            report.message = f"'{item.name}' is already defined"
            return report
        inner = ctx.extend(z, TRAIL)
        s = self._session(inner, lowered)
        try:
            report.inferred = infer_in(inner, lowered, s)
            report.status = Status.PASS
        except OutOfFuel:
            report.status, report.message = Status.UNKNOWN, "ran out of fuel"
        except InferFailure as exc:
            report.message = str(exc.at(item.line))
        report.fuel_used = s.fuel.used
        return report


def check_annotated_program(
    source: SourceFile, fuel: int = 10000, seed: int = 0, trace: bool = False, parallel: bool = False
) -> ProgramReport:
    """Check every item of ``source``; an empty file gives an empty report."""
    return ProgramChecker(fuel=fuel, seed=seed, trace=trace).run(source, parallel=parallel)


def inline_definitions(term: Term, definitions: list[tuple[str, Term]]) -> Term:
    """Substitute earlier definitions into ``term``, latest first."""
    for name, body in reversed(definitions):
        term = subst(term, name, body)
    return term


def runnable_items(
    source: SourceFile, chooser: Optional[Chooser] = None, fuel: int = 10000
) -> list[tuple[Item, Term]]:
    """``eval`` items with the value of every earlier ``def`` substituted.

    Definitions run once each, in file order, drawing their choices from
    ``chooser``. A definition that has no value is left unbound.
    """
    chooser = chooser or SeededChooser()
    values: list[tuple[str, Term]] = []
    runnable = []
    for item in source:
        if item.kind is ItemKind.DEF:
            try:
                result = evaluate(inline_definitions(item.term, values), chooser, fuel)
            except ElamError as exc:
                logger.warning("def %s at line %s has no value: %s", item.name, item.line, exc)
                continue
            values.append((item.name, result.value))
        elif item.kind is ItemKind.EVAL:
            runnable.append((item, inline_definitions(item.term, values)))
    return runnable
