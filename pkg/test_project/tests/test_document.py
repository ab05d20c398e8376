import json
import pathlib

import pytest

from operad_extensions import exceptions, operads
from operad_extensions.cli import document
from operad_extensions.profiles import ColorSet, IOPair

STAR = "∗"


def _with_entry(entry: dict) -> str:
    return json.dumps(
        {"colors": ["a", "b"], "symseq": {"X": {"entries": [entry]}}},
    )


def test_round_trip(documents_dir: pathlib.Path):
    """Check that serialized documents parse back to the same content."""
    text = (documents_dir / "free_generators.json").read_text(encoding="utf-8")
    parsed = document.parse(text)
    serialized = document.serialize(parsed)
    reparsed = document.parse(serialized)

    assert reparsed.colorset == parsed.colorset
    assert reparsed.operads == parsed.operads
    assert reparsed.commands == parsed.commands
    for name, sequence in parsed.symseqs.items():
        sizes = {key: len(gset) for key, gset in sequence.items()}
        assert {
            key: len(gset) for key, gset in reparsed.symseqs[name].items()
        } == sizes
    assert document.serialize(reparsed) == serialized


def test_declared_action(documents_dir: pathlib.Path):
    """Check that action tables are read into entries."""
    parsed = document.parse(
        (documents_dir / "free_generators.json").read_text(encoding="utf-8"),
    )
    entry = parsed.symseq("X").get("a", ("a", "a", "b"))
    assert entry.act("x", (1, 0, 2)) == "y"
    assert entry.act("y", (0, 1, 2)) == "y"
    assert len(parsed.symseq("X").get("b", ("a",))) == 1


@pytest.mark.parametrize(
    argnames=["text", "position"],
    argvalues=[
        pytest.param(
            _with_entry(
                {
                    "output": "a",
                    "inputs": ["a", "a", "b"],
                    "elements": ["x"],
                    "action": [
                        {"permutation": [2, 1, 0], "images": [["x", "x"]]},
                    ],
                },
            ),
            "symseq.X.entries[0].action[0].permutation",
            id="Permutation moving colors",
        ),
        pytest.param(
            _with_entry(
                {"output": "a", "inputs": ["b", "a"], "elements": ["x"]},
            ),
            "symseq.X.entries[0].inputs",
            id="Unsorted profile",
        ),
        pytest.param(
            _with_entry(
                {"output": "a", "inputs": ["a", "c"], "elements": ["x"]},
            ),
            "symseq.X.entries[0].inputs[1]",
            id="Undeclared input color",
        ),
        pytest.param(
            _with_entry({"output": "c", "inputs": [], "elements": ["x"]}),
            "symseq.X.entries[0].output",
            id="Undeclared output color",
        ),
        pytest.param(
            json.dumps({"colors": ["a"], "symseq": {"I": {"entries": []}}}),
            "symseq.I",
            id="Reserved unit name",
        ),
        pytest.param(
            json.dumps({"colors": ["a"], "operads": {"A": {"preset": "lie"}}}),
            "operads.A.preset",
            id="Unknown preset",
        ),
        pytest.param(
            json.dumps(
                {
                    "colors": ["a"],
                    "operads": {"A": {"preset": "com", "weights": 2}},
                },
            ),
            "operads.A",
            id="Two operad kinds",
        ),
        pytest.param(
            json.dumps({"colors": ["a"], "commands": [{"operad": "A"}]}),
            "commands[0].command",
            id="Command without name",
        ),
        pytest.param(
            json.dumps({"colors": "a"}),
            "colors",
            id="Colors not a list",
        ),
    ],
)
def test_invalid_documents(text: str, position: str):
    """Check that errors point at the offending part of a document."""
    with pytest.raises(exceptions.DocumentError) as error:
        document.parse(text)
    assert error.value.position == position


def test_broken_action_table():
    """Check that tables violating action axioms are refused."""
    text = _with_entry(
        {
            "output": "a",
            "inputs": ["a", "a"],
            "elements": ["x", "y"],
            "action": [
                {
                    "permutation": [1, 0],
                    "images": [["x", "y"], ["y", "y"]],
                },
            ],
        },
    )
    with pytest.raises(exceptions.DocumentError) as error:
        document.parse(text)
    assert error.value.position == "symseq.X.entries[0].action"
    assert "not an action" in str(error.value)


def test_action_row_without_permutation():
    """Check that action rows must list a permutation."""
    text = _with_entry(
        {
            "output": "a",
            "inputs": ["a", "a"],
            "elements": ["x"],
            "action": [{"permutation": [0, 0], "images": [["x", "x"]]}],
        },
    )
    with pytest.raises(exceptions.DocumentError, match="not a permutation"):
        document.parse(text)


def test_malformed_json():
    """Check that JSON syntax errors report line and column."""
    with pytest.raises(exceptions.DocumentError) as error:
        document.parse('{"colors": [')
    assert error.value.position.startswith("line 1 column")


def test_table_operad():
    """Check that operads given by tables are built and validated."""
    parsed = document.parse(
        json.dumps(
            {
                "colors": [STAR],
                "operads": {
                    "T": {
                        "entries": [
                            {
                                "output": STAR,
                                "inputs": [STAR],
                                "elements": ["e"],
                            },
                        ],
                        "units": {STAR: "e"},
                        "composition": [
                            {
                                "output": STAR,
                                "inputs": [STAR],
                                "element": "e",
                                "bottoms": [
                                    {"inputs": [STAR], "element": "e"},
                                ],
                                "value": "e",
                            },
                        ],
                    },
                },
            },
        ),
    )
    operad = parsed.operad("T")
    assert isinstance(operad, operads.TableOperad)
    assert operad.arity_bound == 1
    assert operad.unit(STAR).element == "e"
    assert not operads.validate_operad(operad, 1).has_violations


def test_composition_row_arity():
    """Check that composition rows need one bottom per input."""
    parsed = document.parse(
        json.dumps(
            {
                "colors": [STAR],
                "operads": {
                    "T": {
                        "entries": [],
                        "composition": [
                            {
                                "output": STAR,
                                "inputs": [STAR, STAR],
                                "element": "m",
                                "bottoms": [],
                                "value": "m",
                            },
                        ],
                    },
                },
            },
        ),
    )
    with pytest.raises(exceptions.DocumentError) as error:
        parsed.operad("T")
    assert error.value.position == "operads.T.composition[0].bottoms"


def test_presets_by_name():
    """Check that preset names resolve without declarations."""
    parsed = document.Document(colorset=ColorSet.single())
    assert len(parsed.operad("assoc", 3).entry(STAR, (STAR, STAR))) == 2
    assert len(parsed.symseq(document.UNIT_NAME).get(STAR, (STAR,))) == 1


def test_undeclared_names():
    """Check that unknown operads, sequences and maps are reported."""
    parsed = document.Document(colorset=ColorSet.single())
    with pytest.raises(exceptions.DocumentError) as error:
        parsed.operad("missing")
    assert error.value.position == "operads.missing"
    with pytest.raises(exceptions.DocumentError, match="symseq.X"):
        parsed.symseq("X")
    with pytest.raises(exceptions.DocumentError, match="maps.cell"):
        parsed.attachment("cell")


def test_attachment(documents_dir: pathlib.Path):
    """Check that declared cells are built over their operads."""
    parsed = document.parse(
        (documents_dir / "unary_cell.json").read_text(encoding="utf-8"),
    )
    data = parsed.attachment("cell")
    assert data.source == IOPair((STAR,), STAR)
    assert len(data.generator_entry) == 1
    assert data.ambient.arity_bound == 3


def test_attaching_undeclared_element():
    """Check that attaching maps are checked against the ambient entry."""
    parsed = document.parse(
        json.dumps(
            {
                "colors": [STAR],
                "maps": {
                    "cell": {
                        "operad": "com",
                        "source": {"output": STAR, "inputs": [STAR, STAR]},
                        "X": ["x"],
                        "Y": ["x"],
                        "attaching": {"x": "missing"},
                    },
                },
            },
        ),
    )
    with pytest.raises(exceptions.DocumentError) as error:
        parsed.attachment("cell")
    assert error.value.position == "maps.cell"


@pytest.mark.parametrize(
    argnames=["text", "expected"],
    argvalues=[
        pytest.param("(b;a,a)", IOPair(("a", "a"), "b"), id="Binary"),
        pytest.param(" (a; b , a) ", IOPair(("b", "a"), "a"), id="Spaces"),
        pytest.param("(a;)", IOPair((), "a"), id="Constant"),
        pytest.param("a;b", IOPair(("b",), "a"), id="No parentheses"),
    ],
)
def test_pair_from_text(two_colors: ColorSet, text: str, expected: IOPair):
    """Check parsing of profiles written on the command line."""
    assert document.pair_from_text(two_colors, text) == expected


@pytest.mark.parametrize(
    argnames=["text", "position"],
    argvalues=[
        pytest.param("(a,b)", "entry", id="No separator"),
        pytest.param("(c;a)", "entry.output", id="Undeclared output"),
        pytest.param("(a;a,c)", "entry.inputs[1]", id="Undeclared input"),
    ],
)
def test_invalid_pair_text(two_colors: ColorSet, text: str, position: str):
    """Check that bad profiles report their position."""
    with pytest.raises(exceptions.DocumentError) as error:
        document.pair_from_text(two_colors, text)
    assert error.value.position == position
