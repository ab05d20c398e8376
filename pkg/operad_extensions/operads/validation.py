"""Exhaustive checks of operad axioms and algebra structures within bounds."""

import itertools
import logging
from collections.abc import Iterator

from .. import exceptions, profiles, utils
from ..profiles import Color, Profile
from ..results import ValidationReport, Violation
from .core import Operad, Operation
from .endomorphism import OperadMap

logger = logging.getLogger(__name__)


def _by_output(operad: Operad, bound: int) -> dict[Color, list[Profile]]:
    grouped: dict[Color, list[Profile]] = {}
    for output, representative in operad.keys(bound):
        grouped.setdefault(output, []).append(representative)
    return grouped


def _bottom_choices(
    operad: Operad,
    inputs: Profile,
    bound: int,
    grouped: dict[Color, list[Profile]],
) -> Iterator[tuple[Operation, ...]]:
    """Iterate over representative bottoms with total arity within bound."""
    choices = [grouped.get(color, []) for color in inputs]
    for parts in itertools.product(*choices):
        if sum(map(len, parts)) > bound:
            continue
        yield from itertools.product(
            *(
                operad.operations(color, part)
                for color, part in zip(inputs, parts, strict=True)
            ),
        )


def _check_actions(
    operad: Operad,
    bound: int,
    report: ValidationReport,
) -> None:
    for key in operad.keys(bound):
        report.checked_count += 1
        try:
            operad.entry(*key).validate()
        except exceptions.NotAnActionError as error:
            report.add(Violation("action", (key, error.axiom, error.instance)))


def _check_units(operad: Operad, bound: int, report: ValidationReport) -> None:
    for output, representative in operad.keys(bound):
        for operation in operad.operations(output, representative):
            report.check(
                "left unit",
                operation,
                operation,
                operad.gamma(operad.unit(output), [operation]),
            )
            report.check(
                "right unit",
                operation,
                operation,
                operad.gamma(
                    operation,
                    [operad.unit(color) for color in representative],
                ),
            )


def _check_equivariance(
    operad: Operad,
    bound: int,
    grouped: dict[Color, list[Profile]],
    report: ValidationReport,
) -> None:
    for output, representative in operad.keys(bound):
        orbit = profiles.orbit_of(representative, operad.colorset)
        stabilizer = orbit.stabilizer
        for top in operad.operations(output, representative):
            for bottoms in _bottom_choices(
                operad,
                representative,
                bound,
                grouped,
            ):
                composite = operad.gamma(top, bottoms)
                sizes = [bottom.arity for bottom in bottoms]
                for permutation in stabilizer:
                    report.check(
                        "top equivariance",
                        (top, bottoms, permutation),
                        operad.act(
                            composite,
                            profiles.block_permutation(permutation, sizes),
                        ),
                        operad.gamma(
                            operad.act(top, permutation),
                            utils.permute(bottoms, permutation),
                        ),
                    )
                for bottom_permutations in itertools.product(
                    *(
                        profiles.orbit_of(
                            bottom.inputs,
                            operad.colorset,
                        ).stabilizer
                        for bottom in bottoms
                    ),
                ):
                    report.check(
                        "bottom equivariance",
                        (top, bottoms, bottom_permutations),
                        operad.act(
                            composite,
                            profiles.block_sum(bottom_permutations),
                        ),
                        operad.gamma(
                            top,
                            [
                                operad.act(bottom, permutation)
                                for bottom, permutation in zip(
                                    bottoms,
                                    bottom_permutations,
                                    strict=True,
                                )
                            ],
                        ),
                    )


def _check_associativity(
    operad: Operad,
    bound: int,
    grouped: dict[Color, list[Profile]],
    report: ValidationReport,
) -> None:
    for output, representative in operad.keys(bound):
        for top in operad.operations(output, representative):
            for middles in _bottom_choices(
                operad,
                representative,
                bound,
                grouped,
            ):
                inner = operad.gamma(top, middles)
                concatenated = inner.inputs
                for bottoms in _bottom_choices(
                    operad,
                    concatenated,
                    bound,
                    grouped,
                ):
                    outer = operad.gamma(inner, bottoms)
                    starts = utils.offsets(
                        [middle.arity for middle in middles],
                    )
                    nested = [
                        operad.gamma(
                            middle,
                            bottoms[start:start + middle.arity],
                        )
                        for middle, start in zip(middles, starts, strict=True)
                    ]
                    report.check(
                        "associativity",
                        (top, middles, bottoms),
                        outer,
                        operad.gamma(top, nested),
                    )


def validate_operad(operad: Operad, arity_bound: int) -> ValidationReport:
    """Check operad axioms on every instance within the bound.

    Instances are compositions ``gamma(x; y_1..y_m)`` with ``m`` and the
    total arity of ``y`` at most ``arity_bound`` (for associativity also
    the total arity of the third level). Violations name the axiom and the
    full input.

    """
    report = ValidationReport()
    grouped = _by_output(operad, arity_bound)
    _check_actions(operad, arity_bound, report)
    if report.has_violations:
        return report
    _check_units(operad, arity_bound, report)
    _check_equivariance(operad, arity_bound, grouped, report)
    _check_associativity(operad, arity_bound, grouped, report)
    logger.info(
        "Checked %s axiom instances, found %s violations",
        report.checked_count,
        report.violations_count,
    )
    return report


def check_algebra(
    operad: Operad,
    structure: OperadMap,
    arity_bound: int,
) -> ValidationReport:
    """Check that a map into an endomorphism operad is a map of operads.

    Units, actions of stabilizers and composites within the bound must be
    preserved.

    """
    report = ValidationReport()
    target = structure.target
    grouped = _by_output(operad, arity_bound)

    def image(operation: Operation) -> Operation:
        representative = operad.colorset.representative(operation.inputs)
        transport = profiles.transport(operation.inputs, operad.colorset)
        mapped = Operation(
            operation.output,
            representative,
            structure((operation.output, representative), operation.element),
        )
        return target.act(mapped, transport)

    for color in operad.colorset:
        report.check(
            "unit",
            color,
            target.unit(color),
            image(operad.unit(color)),
        )
    for output, representative in operad.keys(arity_bound):
        entry = target.entry(output, representative)
        orbit = profiles.orbit_of(representative, operad.colorset)
        stabilizer = orbit.stabilizer
        for operation in operad.operations(output, representative):
            mapped = image(operation)
            if mapped.element not in entry:
                report.add(Violation("image", operation, None, mapped))
                continue
            for permutation in stabilizer:
                report.check(
                    "equivariance",
                    (operation, permutation),
                    target.act(mapped, permutation),
                    image(operad.act(operation, permutation)),
                )
            for bottoms in _bottom_choices(
                operad,
                representative,
                arity_bound,
                grouped,
            ):
                report.check(
                    "composition",
                    (operation, bottoms),
                    target.gamma(
                        mapped,
                        [image(bottom) for bottom in bottoms],
                    ),
                    image(operad.gamma(operation, bottoms)),
                )
    logger.info(
        "Checked %s algebra instances, found %s violations",
        report.checked_count,
        report.violations_count,
    )
    return report
