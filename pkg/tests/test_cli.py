"""Tests for the elam command line."""

import json

import pytest
from click.testing import CliRunner

from elam import __version__
from elam.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def program(tmp_path):
    path = tmp_path / "prog.elam"
    path.write_text(
        "def id = \\(x: List) => x\ncheck id nil : { nil : List }\neval id (cons nil nil)\n",
        encoding="utf-8",
    )
    return path


class TestCheck:
    def test_passing_file(self, runner, program):
        result = runner.invoke(main, ["check", str(program)])
        assert result.exit_code == EXIT_OK

    def test_failing_file(self, runner, corpus_dir):
        result = runner.invoke(main, ["check", str(corpus_dir / "untangle.elam")])
        assert result.exit_code == EXIT_FAILED

    def test_json(self, runner, program):
        result = runner.invoke(main, ["check", "--json", str(program)])
        data = json.loads(result.stdout)
        assert data["ok"] is True
        (report,) = data["files"]
        assert report["summary"]["passed"] == 3
        assert report["items"][2]["value"] == "cons nil nil"

    def test_parse_error(self, runner, tmp_path):
        path = tmp_path / "broken.elam"
        path.write_text("check cons nil : List\n", encoding="utf-8")
        result = runner.invoke(main, ["check", str(path)])
        assert result.exit_code == EXIT_USAGE

    def test_fuel_must_be_positive(self, runner, program):
        result = runner.invoke(main, ["check", "--fuel", "0", str(program)])
        assert result.exit_code == EXIT_USAGE

    def test_save(self, runner, program, tmp_path):
        target = tmp_path / "report"
        result = runner.invoke(main, ["check", "--save", str(target), str(program)])
        assert result.exit_code == EXIT_OK
        assert (tmp_path / "report.md").read_text(encoding="utf-8")

    def test_alias(self, runner, program):
        assert runner.invoke(main, ["c", str(program)]).exit_code == EXIT_OK


class TestSub:
    def test_holds(self, runner):
        result = runner.invoke(main, ["sub", "{ nil : List }", "List"])
        assert result.exit_code == EXIT_OK

    def test_fails(self, runner):
        result = runner.invoke(main, ["sub", "List", "{ nil : List }"])
        assert result.exit_code == EXIT_FAILED

    def test_choices_are_lowered(self, runner):
        result = runner.invoke(main, ["s", "{ cons nil nil : List }", "{ cons choose[Top] choose[List] : List }"])
        assert result.exit_code == EXIT_OK

    def test_trace_and_oracle(self, runner):
        result = runner.invoke(main, ["sub", "--trace", "--oracle", "Cons Top List", "List"])
        assert result.exit_code == EXIT_OK
        assert "SubCons" in result.stdout
        assert "oracle:" in result.stdout

    def test_bad_type(self, runner):
        result = runner.invoke(main, ["sub", "Pi(x List", "Top"])
        assert result.exit_code == EXIT_USAGE

    def test_ill_formed_type(self, runner):
        result = runner.invoke(main, ["sub", "{ nil : List }", "{ nil : Pi(x: Top) => Top }"])
        assert result.exit_code == EXIT_USAGE
        assert "ill-formed" in result.output

    def test_ill_formed_context(self, runner):
        result = runner.invoke(main, ["sub", "--ctx", "x: { cons nil nil : Pi(y: List) => List }", "{ x : Top }", "Top"])
        assert result.exit_code == EXIT_USAGE


class TestNorm:
    def test_better_bound(self, runner):
        result = runner.invoke(main, ["norm", "--type", "{ x : Top }", "--ctx", "x: { nil : List }"])
        assert result.exit_code == EXIT_OK
        assert result.stdout.strip() == "{ nil : List }"

    def test_untangle(self, runner):
        result = runner.invoke(main, ["n", "--untangle", "--type", "{ cons choose[Top] choose[List] : List }"])
        assert result.exit_code == EXIT_OK
        assert "Trail" not in result.stdout

    def test_context_entries_see_earlier_ones(self, runner):
        result = runner.invoke(main, ["norm", "--type", "{ y : Top }", "--ctx", "x: { nil : List }, y: { x : List }"])
        assert result.exit_code == EXIT_OK
        assert result.stdout.strip() == "{ nil : List }"

    def test_ill_formed_context(self, runner):
        result = runner.invoke(main, ["norm", "--type", "Top", "--ctx", "x: { y : List }"])
        assert result.exit_code == EXIT_USAGE

    def test_unbound_variable_in_type(self, runner):
        result = runner.invoke(main, ["norm", "--type", "{ x : Top }"])
        assert result.exit_code == EXIT_USAGE


class TestEval:
    def test_seeded(self, runner, program):
        result = runner.invoke(main, ["eval", "--seed", "1", str(program)])
        assert result.exit_code == EXIT_OK
        assert "cons nil nil" in result.stdout

    def test_script(self, runner, corpus_dir, tmp_path):
        script = tmp_path / "choices.yaml"
        script.write_text("- nil\n- cons nil nil\n", encoding="utf-8")
        result = runner.invoke(main, ["eval", "--script", str(script), str(corpus_dir / "choose_pair.elam")])
        assert result.exit_code == EXIT_OK
        assert "cons nil (cons nil nil)" in result.stdout

    def test_script_and_all_conflict(self, runner, corpus_dir, tmp_path):
        script = tmp_path / "choices.yaml"
        script.write_text("- nil\n", encoding="utf-8")
        result = runner.invoke(main, ["eval", "--all", "--script", str(script), str(corpus_dir / "choose_pair.elam")])
        assert result.exit_code == EXIT_USAGE

    def test_definition_chooses_once(self, runner, tmp_path):
        program = tmp_path / "shared.elam"
        program.write_text("def c = choose[List]\neval cons c (cons c nil)\n", encoding="utf-8")
        script = tmp_path / "choices.yaml"
        script.write_text("- nil\n- cons nil nil\n", encoding="utf-8")
        result = runner.invoke(main, ["eval", "--script", str(script), str(program)])
        assert result.exit_code == EXIT_OK
        assert "cons nil (cons nil nil)" in result.stdout

    def test_same_seed_same_output(self, runner, corpus_dir):
        args = ["eval", "--seed", "11", str(corpus_dir / "choose_pair.elam")]
        first, second = runner.invoke(main, args), runner.invoke(main, args)
        assert first.exit_code == EXIT_OK
        assert first.stdout == second.stdout

    def test_explore(self, runner, corpus_dir):
        result = runner.invoke(main, ["e", "--all", str(corpus_dir / "choose_pair.elam")])
        assert result.exit_code == EXIT_OK
        assert "run(s)" in result.stdout


class TestOtherCommands:
    def test_lower(self, runner, corpus_dir):
        result = runner.invoke(main, ["lower", str(corpus_dir / "choose_pair.elam")])
        assert result.exit_code == EXIT_OK
        assert "choose" not in result.stdout
        assert "unpack[Top]" in result.stdout

    def test_infer_json(self, runner, program):
        result = runner.invoke(main, ["infer", "--json", str(program)])
        assert result.exit_code == EXIT_OK
        entries = json.loads(result.stdout)
        assert [entry["line"] for entry in entries] == [1, 2]
        assert entries[0]["type"].startswith("{ ")

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert __version__ in result.stdout
