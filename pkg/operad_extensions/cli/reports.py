"""Reports printed by commands.

Rows are kept in a ``tablib.Dataset`` and rendered either as aligned
text or as JSON with the same content.

"""

import dataclasses
import json
import typing
from collections.abc import Iterable, Sequence

import tablib

from .. import trees, utils
from ..circle import (
    CircleProduct,
    entries_of,
    is_concentrated_in_arity_zero,
)
from ..operads import FreeEntry
from ..pushout import DwyerRow, FiltrationStage, OracleResult, agrees
from ..results import BijectionWitness, ValidationReport
from ..symseq import SymSeq

EMIT_FORMATS = ("text", "json")
STAGE_HEADERS = (
    "entry",
    "stage",
    "tree",
    "automorphisms",
    "decorations",
    "added",
    "cumulative",
)


@dataclasses.dataclass
class Report:
    """Titled table with summary lines."""

    title: str
    dataset: tablib.Dataset
    summary: list[str] = dataclasses.field(default_factory=list)
    failed: bool = False

    @classmethod
    def build(
        cls,
        title: str,
        headers: Sequence[str],
        rows: Iterable[Sequence[typing.Any]],
        summary: Sequence[str] = (),
        failed: bool = False,
    ) -> "Report":
        """Create report from rows of plain values."""
        dataset = tablib.Dataset(headers=list(headers))
        for row in rows:
            dataset.append([_cell(value) for value in row])
        return cls(
            title=title,
            dataset=dataset,
            summary=list(summary),
            failed=failed,
        )

    def render(self, emit: str = "text") -> str:
        """Return report text in one of `EMIT_FORMATS`."""
        if emit == "json":
            return json.dumps(
                {
                    "title": self.title,
                    "rows": [dict(row) for row in self.dataset.dict],
                    "summary": self.summary,
                    "failed": self.failed,
                },
                ensure_ascii=False,
                indent=2,
            ) + "\n"
        return self._text()

    def _text(self) -> str:
        lines = [self.title]
        headers = list(self.dataset.headers or [])
        if headers and self.dataset.height:
            table = [headers]
            table.extend([str(value) for value in row] for row in self.dataset)
            widths = [
                max(len(row[index]) for row in table)
                for index in range(len(headers))
            ]
            for row in table:
                lines.append(
                    "  ".join(
                        value.ljust(width)
                        for value, width in zip(row, widths, strict=True)
                    ).rstrip(),
                )
        lines.extend(self.summary)
        return "\n".join(lines) + "\n"


def _cell(value: typing.Any) -> typing.Any:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int | str):
        return value
    if isinstance(value, tuple) and all(
        isinstance(item, int) for item in value
    ):
        return utils.format_permutation(value)
    return str(value)


def validation_report(
    name: str,
    bound: int,
    report: ValidationReport,
) -> Report:
    """Return report of operad axiom checks."""
    return Report.build(
        title=f"validate {name} at bound {bound}",
        headers=["axiom", "instance", "expected", "actual"],
        rows=(
            [
                violation.axiom,
                violation.instance,
                violation.expected,
                violation.actual,
            ]
            for violation in report.violations
        ),
        summary=[f"{report.checked_count} instances checked", str(report)],
        failed=report.has_violations,
    )


def _entry_rows(sequence: SymSeq) -> Iterable[list[typing.Any]]:
    for (output, representative), size in entries_of(sequence):
        yield [output, ",".join(representative), size]


def circle_report(
    names: tuple[str, str],
    product: CircleProduct,
    unit: SymSeq,
    witnesses: Sequence[tuple[str, BijectionWitness]] = (),
) -> Report:
    """Return entry sizes of a circle product."""
    is_unit = dict(entries_of(product)) == dict(entries_of(unit))
    summary = [
        f"{len(product.table)} entries, {product.size} elements",
        f"unit sequence: {'yes' if is_unit else 'no'}",
        "constants only: "
        + ("yes" if is_concentrated_in_arity_zero(product) else "no"),
    ]
    summary.extend(
        f"{law}: "
        + ("bijective" if witness else f"fails at {witness.counterexample}")
        for law, witness in witnesses
    )
    return Report.build(
        title=f"circle {names[0]} o {names[1]}",
        headers=["output", "inputs", "size"],
        rows=_entry_rows(product),
        summary=summary,
        failed=not all(witness for _, witness in witnesses),
    )


def free_report(name: str, entry: str, result: FreeEntry) -> Report:
    """Return elements of a free operad entry."""
    return Report.build(
        title=f"free {name} at {entry}",
        headers=["tree", "vertices"],
        rows=([tree.code, tree.vertex_count] for tree in result),
        summary=[
            f"{len(result)} elements",
            f"complete: {'yes' if result.complete else 'no'}",
        ],
    )


def stages_report(
    name: str,
    stages: Sequence[FiltrationStage],
    oracle: OracleResult | None = None,
) -> Report:
    """Return contributions of reduced trees to each stage."""
    rows: list[list[typing.Any]] = []
    cumulative = 0
    for stage in stages:
        if stage.inclusion is None:
            cumulative = size = len(stage)
            rows.append([str(stage.target), 0, "-", 1, size, size, size])
            continue
        for contribution in stage.contributions:
            cumulative += contribution.added
            rows.append(
                [
                    str(stage.target),
                    stage.index,
                    contribution.code,
                    contribution.automorphisms,
                    contribution.decorations,
                    contribution.added,
                    cumulative,
                ],
            )
    last = stages[-1]
    summary = [
        f"stage {stage.index}: {len(stage)} elements"
        + (" (partial)" if stage.exhausted else "")
        for stage in stages
    ]
    summary.append(f"final: {'yes' if last.final else 'no'}")
    failed = False
    if oracle is not None:
        matches = agrees(stages, oracle)
        summary.append(
            f"oracle: {oracle.terms} terms, "
            f"certified to stage {oracle.certified}, "
            f"{'agrees' if matches else 'disagrees'}",
        )
        failed = not matches
    return Report.build(
        title=f"pushout {name} at {last.target}",
        headers=STAGE_HEADERS,
        rows=rows,
        summary=summary,
        failed=failed,
    )


def dwyer_report(name: str, rows: Sequence[DwyerRow]) -> Report:
    """Return stage contributions of ``A+(0)`` next to orbit counts."""
    disagreements = [row.arity for row in rows if not row.agrees]
    return Report.build(
        title=f"dwyer {name}",
        headers=["stage", "contribution", "orbits", "agrees"],
        rows=([row.arity, row.added, row.orbits, row.agrees] for row in rows),
        summary=[
            "all stages agree"
            if not disagreements
            else f"stages {', '.join(map(str, disagreements))} disagree",
        ],
        failed=bool(disagreements),
    )


def trees_report(
    title: str,
    reduced: trees.ReducedTrees,
) -> Report:
    """Return reduced trees with their automorphism group orders."""
    rows = []
    mismatches = 0
    for tree in reduced:
        order = trees.automorphism_group(tree).order
        expected = trees.grafting_order(tree)
        mismatches += order != expected
        rows.append([str(tree), tree.vertex_count, order, expected])
    summary = [f"{len(reduced)} trees"]
    if reduced.exhausted:
        summary.append("vertex bound reached, list is partial")
    return Report.build(
        title=title,
        headers=["tree", "vertices", "automorphisms", "grafting"],
        rows=rows,
        summary=summary,
        failed=bool(mismatches),
    )
