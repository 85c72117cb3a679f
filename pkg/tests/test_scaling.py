"""Checking time for concat as the input lists grow."""

import math
import statistics
import time

import pytest

from elam.checker import check_annotated_program
from elam.config import get_config
from elam.core.syntax import Nil
from elam.core.values import list_of
from elam.frontend import parse_source

pytestmark = pytest.mark.slow

SIZES = (10, 50, 100, 200)


def _list(n: int) -> str:
    return str(list_of([Nil()] * n))


def _program(n: int) -> str:
    items = _list(n)
    return (
        f"def concat = fix[{n + 1}](f: Pi(l1: List) => Pi(l2: List) => List =>\n"
        "  \\(l1: List) => \\(l2: List) => match l1 { nil => l2; cons x xs => cons x (f xs l2) },\n"
        "  \\(l1: List) => \\(l2: List) => l2)\n"
        f"check concat ({items}) ({items}) : List\n"
    )


def _seconds(n: int) -> float:
    source = parse_source(_program(n))
    start = time.perf_counter()
    report = check_annotated_program(source, fuel=1_000_000)
    elapsed = time.perf_counter() - start
    assert report.ok, [item.message for item in report.items]
    return elapsed


def test_checking_grows_subquadratically():
    get_config().apply_runtime_limits()
    timings = [_seconds(n) for n in SIZES]
    slope = statistics.linear_regression(
        [math.log(n) for n in SIZES], [math.log(max(t, 1e-6)) for t in timings]
    ).slope
    assert slope < 1.5, timings
    assert timings[-1] < 10.0
