"""Tests for trails: selection, update, unpacking and choice logs."""

import pytest
from hypothesis import assume, given, settings, strategies as st

from elam.core import trail as trails
from elam.core.errors import PrefixClash
from elam.core.evaluator import ChoiceEntry, SeededChooser, evaluate
from elam.core.syntax import BaseKind, Cons, Nil
from elam.frontend.printer import format_trail

from strategies import paths, surface_programs, trail_trees


def _related(p, q) -> bool:
    shorter = min(len(p), len(q))
    return p[:shorter] == q[:shorter]


class TestTrailLaws:
    @given(trail_trees, paths(), trail_trees)
    @settings(max_examples=300)
    def test_select_after_update(self, tree, path, replacement):
        assert trails.select(trails.update(tree, path, replacement), path) == replacement

    @given(trail_trees, paths(), paths(), trail_trees)
    @settings(max_examples=300)
    def test_update_leaves_other_positions_alone(self, tree, p, q, replacement):
        assume(not _related(p, q))
        updated = trails.update(tree, p, replacement)
        assert trails.select(updated, q) == trails.select(tree, q)

    def test_select_runs_off_the_tree(self):
        leaf = trails.Leaf(BaseKind.TOP, Nil())
        assert trails.select(leaf, (1,)) == trails.EMPTY

    def test_bad_index(self):
        with pytest.raises(ValueError):
            trails.select(trails.EMPTY, (0,))


class TestUnpack:
    def test_matching_tag(self):
        value = Cons(Nil(), Nil())
        assert trails.unpack(BaseKind.LIST, trails.Leaf(BaseKind.LIST, value)) == value

    def test_mismatched_tag_gives_nil(self):
        leaf = trails.Leaf(BaseKind.TOP, Cons(Nil(), Nil()))
        assert trails.unpack(BaseKind.LIST, leaf) == Nil()

    def test_empty_gives_nil(self):
        assert trails.unpack(BaseKind.TOP, trails.EMPTY) == Nil()


class TestChoiceLogs:
    def test_trail_of_log(self):
        log = [
            ChoiceEntry((1,), BaseKind.TOP, Nil()),
            ChoiceEntry((2, 3), BaseKind.LIST, Cons(Nil(), Nil())),
        ]
        tree = trails.trail_of_log(log)
        assert trails.unpack(BaseKind.TOP, trails.select(tree, (1,))) == Nil()
        assert trails.unpack(BaseKind.LIST, trails.select(tree, (2, 3))) == Cons(Nil(), Nil())
        assert [path for path, _ in trails.trail_paths(tree)] == [(1,), (2, 3)]

    def test_overlapping_sites(self):
        log = [ChoiceEntry((1,), BaseKind.TOP, Nil()), ChoiceEntry((1, 2), BaseKind.TOP, Nil())]
        with pytest.raises(PrefixClash):
            trails.trail_of_log(log)

    @given(surface_programs(), st.integers(min_value=0, max_value=2**16))
    @settings(max_examples=100)
    def test_every_logged_choice_is_recovered(self, t, seed):
        log = evaluate(t, SeededChooser(seed)).log
        tree = trails.trail_of_log(log)
        for entry in log:
            assert trails.unpack(entry.base, trails.select(tree, entry.path)) == entry.value
        assert {path for path, _ in trails.trail_paths(tree)} == {entry.path for entry in log}

    def test_format_trail(self):
        tree = trails.update(trails.EMPTY, (1,), trails.Leaf(BaseKind.TOP, Nil()))
        assert format_trail(tree) == "<.1=nil:Top>"


class TestPaths:
    def test_format(self):
        assert trails.format_path((1, 3)) == ".1.3"
        assert trails.format_path(()) == "ε"

    @pytest.mark.parametrize("text,expected", [(".1.3", (1, 3)), ("2", (2,)), ("ε", ()), ("", ())])
    def test_parse(self, text, expected):
        assert trails.parse_path(text) == expected

    @pytest.mark.parametrize("text", [".4", "1.x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            trails.parse_path(text)
