import json
import pathlib

from click.testing import CliRunner

import pytest
import pytest_mock

from operad_extensions import exceptions
from operad_extensions.cli import commands, reports
from operad_extensions.cli.commands import cli


@pytest.fixture
def runner() -> CliRunner:
    """Return runner of the command line interface."""
    return CliRunner()


@pytest.mark.parametrize(
    argnames=["arguments", "expected_lines"],
    argvalues=[
        pytest.param(
            ["dwyer", "--preset", "assoc", "--max-j", "4"],
            ["dwyer assoc", "all stages agree"],
            id="Dwyer on assoc",
        ),
        pytest.param(
            ["validate", "--operad", "com", "--bound", "3"],
            ["validate com at bound 3", "0 violations"],
            id="Validate com",
        ),
        pytest.param(
            ["circle", "--x", "I", "--y", "I", "--witness"],
            [
                "unit sequence: yes",
                "constants only: no",
                "left unit: bijective",
                "right unit: bijective",
            ],
            id="Unit circle unit",
        ),
        pytest.param(
            [
                "trees",
                "--operad",
                "com",
                "--source",
                "(∗;)",
                "--target",
                "(∗;)",
                "--count",
                "2",
            ],
            ["1 trees"],
            id="Trees with two constants",
        ),
    ],
)
def test_single_commands(
    runner: CliRunner,
    arguments: list[str],
    expected_lines: list[str],
):
    """Check reports of commands run without a document."""
    result = runner.invoke(cli, arguments)
    assert result.exit_code == 0, result.output
    for line in expected_lines:
        assert line in result.output.splitlines()


def test_pushout_with_oracle(runner: CliRunner, documents_dir: pathlib.Path):
    """Check that stages of a declared cell agree with the oracle."""
    result = runner.invoke(
        cli,
        [
            "--document",
            str(documents_dir / "unary_cell.json"),
            "pushout",
            "--map",
            "cell",
            "--entry",
            "(∗;∗)",
            "--stages",
            "3",
            "--max-vertices",
            "7",
            "--oracle",
            "--oracle-size",
            "7",
        ],
    )
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert "stage 3: 4 elements" in lines
    assert "final: no" in lines
    oracle_lines = [line for line in lines if line.startswith("oracle:")]
    assert oracle_lines
    assert oracle_lines[0].endswith("agrees")


def test_json_emit(runner: CliRunner):
    """Check that JSON reports carry rows and summary."""
    result = runner.invoke(
        cli,
        ["--emit", "json", "dwyer", "--preset", "com", "--max-j", "3"],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["title"] == "dwyer com"
    assert not report["failed"]
    assert [row["stage"] for row in report["rows"]] == [1, 2, 3]
    assert {row["agrees"] for row in report["rows"]} == {"yes"}


def test_dwyer_has_one_row_per_stage(runner: CliRunner):
    """Check that stages start at one and each adds one assoc element."""
    result = runner.invoke(
        cli,
        ["--emit", "json", "dwyer", "--preset", "assoc", "--max-j", "4"],
    )
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)["rows"]
    assert [row["stage"] for row in rows] == [1, 2, 3, 4]
    assert {row["contribution"] for row in rows} == {1}


@pytest.mark.parametrize(
    argnames=["name", "expected_titles"],
    argvalues=[
        pytest.param(
            "dwyer_presets.json",
            ["dwyer assoc", "dwyer com", "dwyer W"],
            id="Dwyer presets",
        ),
        pytest.param(
            "free_generators.json",
            ["free M at (a;a,a,a)", "circle I o I", "validate C at bound 3"],
            id="Free generators",
        ),
    ],
)
def test_batch(
    runner: CliRunner,
    documents_dir: pathlib.Path,
    name: str,
    expected_titles: list[str],
):
    """Check that batch runs every command listed in a document."""
    result = runner.invoke(
        cli,
        ["--document", str(documents_dir / name), "batch"],
    )
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    for title in expected_titles:
        assert title in lines


def test_binary_cell_batch(runner: CliRunner, documents_dir: pathlib.Path):
    """Check stage sizes of a binary generator run from a document."""
    result = runner.invoke(
        cli,
        ["--document", str(documents_dir / "binary_cell.json"), "batch"],
    )
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert "stage 0: 2 elements" in lines
    assert "stage 1: 10 elements" in lines
    assert "stage 2: 74 elements" in lines


@pytest.mark.parametrize(
    argnames=["arguments", "message"],
    argvalues=[
        pytest.param(
            ["free", "--generators", "X", "--entry", "(∗;∗)"],
            "symseq.X",
            id="Undeclared sequence",
        ),
        pytest.param(
            ["dwyer"],
            "pass an operad or a preset",
            id="Dwyer without operad",
        ),
        pytest.param(
            ["validate", "--operad", "lie"],
            "operads.lie",
            id="Unknown operad",
        ),
    ],
)
def test_command_errors(
    runner: CliRunner,
    arguments: list[str],
    message: str,
):
    """Check that document errors end commands with a message."""
    result = runner.invoke(cli, arguments)
    assert result.exit_code == 1
    assert message in result.output


def test_failed_report_sets_exit_code(
    runner: CliRunner,
    mocker: pytest_mock.MockerFixture,
):
    """Check that failing reports end commands with exit code 1."""
    mocker.patch.object(
        commands,
        "run",
        return_value=reports.Report.build(
            title="failing",
            headers=["value"],
            rows=[[1]],
            failed=True,
        ),
    )
    result = runner.invoke(cli, ["dwyer", "--preset", "com"])
    assert result.exit_code == 1
    assert result.output.splitlines()[0] == "failing"


def test_errors_are_logged(
    runner: CliRunner,
    mocker: pytest_mock.MockerFixture,
):
    """Check that failing computations are logged before exiting."""
    mocker.patch.object(
        commands,
        "dwyer_plus",
        side_effect=exceptions.EntrySizeCapExceeded(("∗", ()), 12, 10),
    )
    warning = mocker.patch.object(commands.logger, "warning")
    result = runner.invoke(cli, ["dwyer", "--preset", "com"])
    assert result.exit_code == 1
    assert "cap is 10" in result.output
    warning.assert_called_once()


def test_unknown_batch_command(runner: CliRunner, tmp_path: pathlib.Path):
    """Check that batch refuses commands it doesn't know."""
    path = tmp_path / "document.json"
    path.write_text(
        json.dumps({"colors": ["∗"], "commands": [{"command": "lie"}]}),
        encoding="utf-8",
    )
    result = runner.invoke(cli, ["--document", str(path), "batch"])
    assert result.exit_code == 1
    assert "unknown command 'lie'" in result.output
