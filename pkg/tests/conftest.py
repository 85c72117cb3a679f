"""Shared fixtures for the elam test suite."""

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from elam.core.syntax import Context
from elam.frontend import parse_context, parse_term, parse_type

settings.register_profile(
    "elam",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("elam")

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def term():
    return parse_term


@pytest.fixture
def ty():
    return parse_type


@pytest.fixture
def ctx():
    """Build a context from ``x: T, y: U`` text; empty text gives the empty context."""

    def build(text: str = "") -> Context:
        return parse_context(text)

    return build
