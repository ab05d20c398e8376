"""JSON documents declaring colors, sequences, operads and cells.

A document looks like::

    {
      "colors": ["a", "b"],
      "symseq": {
        "X": {"entries": [{"output": "a", "inputs": ["a", "a"],
                           "elements": ["x", "y"],
                           "action": [{"permutation": [1, 0],
                                       "images": [["x", "y"], ["y", "x"]]}]}]}
      },
      "operads": {
        "A": {"preset": "assoc", "bound": 4},
        "W": {"weights": 3},
        "M": {"transformations": {"size": 2, "maps": [[1, 0]]}},
        "F": {"free": "X"},
        "T": {"entries": [...], "units": {"a": "e"}, "composition": [...]}
      },
      "maps": {
        "cell": {"operad": "A", "source": {"output": "a", "inputs": []},
                 "X": [], "Y": ["y"], "inclusion": {}, "attaching": {}}
      },
      "commands": [{"command": "dwyer", "operad": "A", "max_j": 4}]
    }

Lists inside elements are read as tuples. The name ``I`` always denotes
the unit sequence.

"""

import dataclasses
import json
import logging
import typing
from collections.abc import Callable, Mapping

from .. import circle, exceptions, fincat, profiles, utils
from ..operads import (
    PRESETS,
    FreeOperad,
    Operad,
    TableOperad,
    preset,
    transformations,
    weights,
)
from ..operads.table import CompositionKey
from ..profiles import ColorSet, IOPair
from ..pushout import AttachmentData
from ..symseq import Key, SymSeq

logger = logging.getLogger(__name__)

UNIT_NAME = "I"
OPERAD_KINDS = ("preset", "weights", "transformations", "free", "entries")

JSON = typing.Any


def freeze(value: JSON) -> typing.Any:
    """Return element with JSON lists turned into tuples."""
    if isinstance(value, list):
        return tuple(freeze(item) for item in value)
    return value


def thaw(value: typing.Any) -> JSON:
    """Return element with tuples turned into JSON lists."""
    if isinstance(value, tuple):
        return [thaw(item) for item in value]
    return value


def _expect(value: JSON, kind: type, position: str) -> typing.Any:
    if not isinstance(value, kind):
        raise exceptions.DocumentError(
            position,
            f"expected {kind.__name__}, got {type(value).__name__}",
        )
    return value


def _profile(
    colorset: ColorSet,
    value: JSON,
    position: str,
) -> profiles.Profile:
    try:
        return colorset.validate_profile(
            tuple(_expect(value, list, position)),
        )
    except exceptions.UndeclaredColorError as error:
        raise exceptions.DocumentError(
            f"{position}[{error.index}]",
            str(error),
        ) from None


def _pair(colorset: ColorSet, value: JSON, position: str) -> IOPair:
    _expect(value, dict, position)
    inputs = _profile(colorset, value.get("inputs", []), f"{position}.inputs")
    output = value.get("output")
    if output not in colorset:
        raise exceptions.DocumentError(
            f"{position}.output",
            f"color {output!r} is not declared",
        )
    return IOPair(inputs, output)


def _gset(
    colorset: ColorSet,
    value: JSON,
    position: str,
) -> tuple[Key, fincat.GSet]:
    pair = _pair(colorset, value, position)
    if not colorset.is_representative(pair.inputs):
        raise exceptions.DocumentError(
            f"{position}.inputs",
            "entries are stored at sorted profiles, got "
            f"{','.join(pair.inputs)}",
        )
    declared = _expect(
        value.get("elements", []),
        list,
        f"{position}.elements",
    )
    elements = fincat.FinSet.of(freeze(element) for element in declared)
    group = fincat.PermGroup.stabilizer(pair.inputs)
    table: dict[utils.Permutation, dict[typing.Any, typing.Any]] = {}
    for index, row in enumerate(value.get("action", [])):
        row_position = f"{position}.action[{index}]"
        permutation = freeze(
            _expect(row.get("permutation"), list, row_position),
        )
        if not utils.is_permutation(permutation):
            raise exceptions.DocumentError(
                f"{row_position}.permutation",
                f"{utils.format_permutation(permutation)} is not a "
                "permutation",
            )
        if permutation not in group:
            raise exceptions.DocumentError(
                f"{row_position}.permutation",
                f"{utils.format_permutation(permutation)} doesn't fix "
                f"{','.join(pair.inputs)}",
            )
        images = _expect(row.get("images"), list, f"{row_position}.images")
        table[permutation] = {
            freeze(source): freeze(target) for source, target in images
        }
    gset = fincat.GSet.from_table(elements, group, table)
    try:
        gset.validate()
    except exceptions.NotAnActionError as error:
        raise exceptions.DocumentError(
            f"{position}.action",
            f"not an action, axiom {error.axiom!r} "
            f"fails at {error.instance!r}",
        ) from None
    return (pair.output, pair.inputs), gset


def _entries(
    colorset: ColorSet,
    value: JSON,
    position: str,
) -> dict[Key, fincat.GSet]:
    result = {}
    for index, item in enumerate(_expect(value, list, position)):
        key, gset = _gset(colorset, item, f"{position}[{index}]")
        result[key] = gset
    return result


def gset_to_json(key: Key, gset: fincat.GSet) -> JSON:
    """Return entry in document form."""
    output, representative = key
    rows = []
    for permutation in gset.group:
        if permutation == gset.group.identity:
            continue
        images = [
            [thaw(element), thaw(gset.act(element, permutation))]
            for element in gset
        ]
        if any(source != target for source, target in images):
            rows.append({"permutation": list(permutation), "images": images})
    result: dict[str, JSON] = {
        "output": output,
        "inputs": list(representative),
        "elements": [thaw(element) for element in gset],
    }
    if rows:
        result["action"] = rows
    return result


@dataclasses.dataclass(frozen=True)
class OperadDeclaration:
    """Declared operad, built on demand."""

    name: str
    kind: str
    parameters: Mapping[str, JSON]

    def to_json(self) -> JSON:
        """Return declaration in document form."""
        return dict(self.parameters)


@dataclasses.dataclass(frozen=True)
class CommandDeclaration:
    """One entry of the ``commands`` list."""

    command: str
    options: Mapping[str, JSON]

    def to_json(self) -> JSON:
        """Return command in document form."""
        return {"command": self.command, **self.options}


@dataclasses.dataclass(frozen=True)
class AttachmentDeclaration:
    """Declared cell ``i: X -> Y`` at ``source`` with attaching map."""

    name: str
    operad: str
    source: IOPair
    attached: tuple[typing.Any, ...]
    generators: tuple[typing.Any, ...]
    inclusion: Mapping[typing.Any, typing.Any]
    attaching: Mapping[typing.Any, typing.Any]

    def to_json(self) -> JSON:
        """Return declaration in document form."""
        return {
            "operad": self.operad,
            "source": {
                "output": self.source.output,
                "inputs": list(self.source.inputs),
            },
            "X": [thaw(element) for element in self.attached],
            "Y": [thaw(element) for element in self.generators],
            "inclusion": [
                [thaw(source), thaw(target)]
                for source, target in self.inclusion.items()
            ],
            "attaching": [
                [thaw(source), thaw(target)]
                for source, target in self.attaching.items()
            ],
        }


@dataclasses.dataclass
class Document:
    """Validated document."""

    colorset: ColorSet
    symseqs: dict[str, SymSeq] = dataclasses.field(default_factory=dict)
    operads: dict[str, OperadDeclaration] = dataclasses.field(
        default_factory=dict,
    )
    maps: dict[str, AttachmentDeclaration] = dataclasses.field(
        default_factory=dict,
    )
    commands: list[CommandDeclaration] = dataclasses.field(
        default_factory=list,
    )
    _built: dict[str, Operad] = dataclasses.field(
        default_factory=dict,
        repr=False,
        compare=False,
    )

    def symseq(self, name: str) -> SymSeq:
        """Return sequence by name, ``I`` is the unit sequence."""
        if name == UNIT_NAME:
            return circle.unit_symseq(self.colorset)
        try:
            return self.symseqs[name]
        except KeyError:
            raise exceptions.DocumentError(
                f"symseq.{name}",
                "sequence is not declared",
            ) from None

    def operad(self, name: str, bound: int | None = None) -> Operad:
        """Return operad by name, presets are accepted as names too."""
        if name not in self.operads and name in PRESETS:
            return preset(name, self.colorset, bound)
        try:
            declaration = self.operads[name]
        except KeyError:
            raise exceptions.DocumentError(
                f"operads.{name}",
                "operad is not declared",
            ) from None
        if bound is not None:
            return _build_operad(self, declaration, bound)
        if name not in self._built:
            self._built[name] = _build_operad(self, declaration, None)
        return self._built[name]

    def attachment(
        self,
        name: str,
        bound: int | None = None,
    ) -> AttachmentData:
        """Return cell by name."""
        try:
            declaration = self.maps[name]
        except KeyError:
            raise exceptions.DocumentError(
                f"maps.{name}",
                "map is not declared",
            ) from None
        data = AttachmentData(
            ambient=self.operad(declaration.operad, bound),
            source=declaration.source,
            inclusion=fincat.FinMap(
                source=fincat.FinSet.of(declaration.attached),
                target=fincat.FinSet.of(declaration.generators),
                mapping=dict(declaration.inclusion),
            ),
            attaching=dict(declaration.attaching),
        )
        try:
            return data.validate()
        except exceptions.DocumentError:
            raise
        except exceptions.OperadExtensionError as error:
            raise exceptions.DocumentError(
                f"maps.{name}",
                str(error),
            ) from None


def _bound(parameters: Mapping[str, JSON], bound: int | None) -> int | None:
    return bound if bound is not None else parameters.get("bound")


def _bottoms(
    colorset: ColorSet,
    row: JSON,
    position: str,
) -> tuple[tuple[profiles.Profile, typing.Any], ...]:
    declared = _expect(row.get("bottoms"), list, f"{position}.bottoms")
    return tuple(
        (
            _profile(
                colorset,
                bottom.get("inputs", []),
                f"{position}.bottoms[{slot}].inputs",
            ),
            freeze(bottom.get("element")),
        )
        for slot, bottom in enumerate(declared)
    )


def _build_table(
    document: Document,
    declaration: OperadDeclaration,
    bound: int | None,
) -> Operad:
    position = f"operads.{declaration.name}"
    colorset = document.colorset
    parameters = declaration.parameters
    entries = _entries(
        colorset,
        parameters["entries"],
        f"{position}.entries",
    )
    units = _expect(parameters.get("units", {}), dict, f"{position}.units")
    composition: dict[CompositionKey, typing.Any] = {}
    for index, row in enumerate(parameters.get("composition", [])):
        row_position = f"{position}.composition[{index}]"
        pair = _pair(colorset, row, row_position)
        bottoms = _bottoms(colorset, row, row_position)
        if len(bottoms) != pair.arity:
            raise exceptions.DocumentError(
                f"{row_position}.bottoms",
                f"operation of arity {pair.arity} needs {pair.arity} "
                f"bottoms, got {len(bottoms)}",
            )
        key = (pair.output, pair.inputs, freeze(row.get("element")), bottoms)
        composition[key] = freeze(row.get("value"))
    arity_bound = _bound(parameters, bound)
    if arity_bound is None:
        arity_bound = max((len(inputs) for _, inputs in entries), default=0)
    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: freeze(element) for color, element in units.items()},
        composition=composition,
        arity_bound=arity_bound,
        name=declaration.name,
    )


def _build_operad(
    document: Document,
    declaration: OperadDeclaration,
    bound: int | None,
) -> Operad:
    parameters = declaration.parameters
    colorset = document.colorset
    arity_bound = _bound(parameters, bound)
    builders: dict[str, Callable[[], Operad]] = {
        "preset": lambda: preset(parameters["preset"], colorset, arity_bound),
        "weights": lambda: weights(
            parameters["weights"],
            colorset,
            arity_bound,
        ),
        "transformations": lambda: transformations(
            parameters["transformations"]["size"],
            [
                tuple(values)
                for values in parameters["transformations"]["maps"]
            ],
            colorset,
            arity_bound,
        ),
        "free": lambda: FreeOperad(
            generators=document.symseq(parameters["free"]),
            **(
                {"vertex_bound": parameters["max_vertices"]}
                if "max_vertices" in parameters
                else {}
            ),
        ),
        "entries": lambda: _build_table(document, declaration, bound),
    }
    try:
        return builders[declaration.kind]()
    except exceptions.DocumentError:
        raise
    except exceptions.OperadExtensionError as error:
        raise exceptions.DocumentError(
            f"operads.{declaration.name}",
            str(error),
        ) from None


def _operad_declaration(name: str, value: JSON) -> OperadDeclaration:
    position = f"operads.{name}"
    _expect(value, dict, position)
    kinds = [kind for kind in OPERAD_KINDS if kind in value]
    if len(kinds) != 1:
        raise exceptions.DocumentError(
            position,
            f"operad needs exactly one of {', '.join(OPERAD_KINDS)}",
        )
    (kind,) = kinds
    if kind == "preset" and value["preset"] not in PRESETS:
        raise exceptions.DocumentError(
            f"{position}.preset",
            f"unknown preset {value['preset']!r}, "
            f"choose from {', '.join(PRESETS)}",
        )
    return OperadDeclaration(name=name, kind=kind, parameters=value)


def _pairs(value: JSON, position: str) -> dict[typing.Any, typing.Any]:
    if isinstance(value, dict):
        items = value.items()
    else:
        items = _expect(value, list, position)
    return {freeze(source): freeze(target) for source, target in items}


def _attachment_declaration(
    colorset: ColorSet,
    name: str,
    value: JSON,
) -> AttachmentDeclaration:
    position = f"maps.{name}"
    _expect(value, dict, position)
    attached = tuple(freeze(element) for element in value.get("X", []))
    generators = tuple(freeze(element) for element in value.get("Y", []))
    inclusion = _pairs(value.get("inclusion", {}), f"{position}.inclusion")
    if not inclusion and set(attached) <= set(generators):
        inclusion = {element: element for element in attached}
    return AttachmentDeclaration(
        name=name,
        operad=_expect(value.get("operad"), str, f"{position}.operad"),
        source=_pair(colorset, value.get("source"), f"{position}.source"),
        attached=attached,
        generators=generators,
        inclusion=inclusion,
        attaching=_pairs(value.get("attaching", {}), f"{position}.attaching"),
    )


def _section(data: JSON, name: str, kind: type) -> typing.Any:
    return _expect(data.get(name, kind()), kind, name)


def from_json(data: JSON) -> Document:
    """Return document from decoded JSON.

    Raises:
        DocumentError: with the JSON path of the first problem.

    """
    _expect(data, dict, "$")
    try:
        colorset = ColorSet(tuple(_section(data, "colors", list)))
    except exceptions.DocumentError:
        raise
    except exceptions.OperadExtensionError as error:
        raise exceptions.DocumentError("colors", str(error)) from None
    document = Document(colorset=colorset)
    for name, value in _section(data, "symseq", dict).items():
        if name == UNIT_NAME:
            raise exceptions.DocumentError(
                f"symseq.{name}",
                f"{UNIT_NAME!r} is reserved for the unit sequence",
            )
        position = f"symseq.{name}"
        entries = _entries(
            colorset,
            _expect(value, dict, position).get("entries", []),
            f"{position}.entries",
        )
        document.symseqs[name] = SymSeq.build(colorset, entries)
    for name, value in _section(data, "operads", dict).items():
        document.operads[name] = _operad_declaration(name, value)
    for name, value in _section(data, "maps", dict).items():
        document.maps[name] = _attachment_declaration(colorset, name, value)
    for index, value in enumerate(_section(data, "commands", list)):
        position = f"commands[{index}]"
        options = dict(_expect(value, dict, position))
        command = _expect(
            options.pop("command", None),
            str,
            f"{position}.command",
        )
        document.commands.append(
            CommandDeclaration(command=command, options=options),
        )
    logger.debug(
        "Parsed document with %s sequences, %s operads, %s maps",
        len(document.symseqs),
        len(document.operads),
        len(document.maps),
    )
    return document


def parse(text: str) -> Document:
    """Return document from JSON text.

    Raises:
        DocumentError: for malformed JSON or invalid declarations.

    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise exceptions.DocumentError(
            f"line {error.lineno} column {error.colno}",
            error.msg,
        ) from None
    return from_json(data)


def to_json(document: Document) -> JSON:
    """Return document as JSON data."""
    data: dict[str, JSON] = {"colors": list(document.colorset.colors)}
    if document.symseqs:
        data["symseq"] = {
            name: {
                "entries": [
                    gset_to_json(key, gset) for key, gset in sequence.items()
                ],
            }
            for name, sequence in document.symseqs.items()
        }
    if document.operads:
        data["operads"] = {
            name: declaration.to_json()
            for name, declaration in document.operads.items()
        }
    if document.maps:
        data["maps"] = {
            name: declaration.to_json()
            for name, declaration in document.maps.items()
        }
    if document.commands:
        data["commands"] = [
            command.to_json() for command in document.commands
        ]
    return data


def serialize(document: Document) -> str:
    """Return document as deterministic JSON text."""
    text = json.dumps(
        to_json(document),
        ensure_ascii=False,
        indent=2,
        sort_keys=True,
    )
    return text + "\n"


def pair_from_text(
    colorset: ColorSet,
    text: str,
    position: str = "entry",
) -> IOPair:
    """Return profile written as ``(output;input,input)``.

    Raises:
        DocumentError: if text is not a profile over declared colors.

    """
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    output, separator, inputs = stripped.partition(";")
    if not separator:
        raise exceptions.DocumentError(
            position,
            f"expected (output;input,...), got {text!r}",
        )
    colors = [color.strip() for color in inputs.split(",")]
    return _pair(
        colorset,
        {
            "output": output.strip(),
            "inputs": [color for color in colors if color],
        },
        position,
    )
