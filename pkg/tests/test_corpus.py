"""Every corpus program against its golden verdicts."""

import pytest
import yaml

from elam.checker import check_annotated_program
from elam.frontend import load_source

from conftest import CORPUS

PROGRAMS = sorted(CORPUS.glob("*.elam"))


@pytest.mark.parametrize("path", PROGRAMS, ids=lambda path: path.stem)
def test_golden(path):
    golden = yaml.safe_load(path.with_suffix(".golden").read_text(encoding="utf-8"))
    report = check_annotated_program(load_source(path), seed=0)

    assert len(report.items) == len(golden)
    for item, expected in zip(report.items, golden):
        where = f"{path.name}:{item.item.line}"
        assert item.item.kind.value == expected["kind"], where
        assert item.status.value == expected["status"], f"{where} {item.message}"
        if "value" in expected:
            assert str(item.value) == expected["value"], where


def test_every_program_has_a_golden_file():
    assert PROGRAMS
    for path in PROGRAMS:
        assert path.with_suffix(".golden").is_file(), path.name
