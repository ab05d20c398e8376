"""Command line interface.

Every subcommand builds a `reports.Report` through `run`, so the ``batch``
subcommand and single commands print identical reports.

"""

import logging
import pathlib
import sys
import typing
from collections.abc import Callable, Mapping

import click

from .. import circle, exceptions, trees
from ..conf import settings
from ..operads import free_operad, validate_operad
from ..profiles import ColorSet
from ..pushout import dwyer_plus, free_extension, oracle_pushout
from . import reports
from .document import Document, pair_from_text, parse

logger = logging.getLogger(__name__)

Options = Mapping[str, typing.Any]
Runner = Callable[[Document, Options], reports.Report]

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _option(options: Options, name: str, default: typing.Any) -> typing.Any:
    value = options.get(name)
    return default if value is None else value


def run_validate(document: Document, options: Options) -> reports.Report:
    """Check operad axioms within a bound."""
    bound = _option(options, "bound", settings.bound)
    operad = document.operad(options["operad"], bound)
    return reports.validation_report(
        options["operad"],
        bound,
        validate_operad(operad, bound),
    )


def run_circle(document: Document, options: Options) -> reports.Report:
    """Compute circle product of two sequences."""
    left, right = document.symseq(options["x"]), document.symseq(options["y"])
    product = circle.circle(left, right, options.get("bound"))
    witnesses = []
    if options.get("witness"):
        witnesses = [
            ("left unit", circle.witness_left_unit(left)),
            ("right unit", circle.witness_right_unit(left)),
        ]
    return reports.circle_report(
        (options["x"], options["y"]),
        product,
        circle.unit_symseq(document.colorset),
        witnesses,
    )


def run_free(document: Document, options: Options) -> reports.Report:
    """Enumerate an entry of a free operad."""
    entry = pair_from_text(document.colorset, options["entry"])
    result = free_operad(
        document.symseq(options["generators"]),
        entry,
        _option(options, "max_vertices", settings.max_vertices),
    )
    return reports.free_report(options["generators"], str(entry), result)


def run_pushout(document: Document, options: Options) -> reports.Report:
    """Compute stages of a free extension and optionally the oracle."""
    entry = pair_from_text(document.colorset, options["entry"])
    data = document.attachment(options["map"], options.get("bound"))
    stages = free_extension(
        data,
        entry,
        _option(options, "stages", settings.stages),
        _option(options, "max_vertices", settings.max_vertices),
    )
    oracle = None
    if options.get("oracle"):
        oracle = oracle_pushout(
            data,
            entry,
            _option(options, "oracle_size", settings.oracle_size_bound),
        )
    return reports.stages_report(options["map"], stages, oracle)


def run_dwyer(document: Document, options: Options) -> reports.Report:
    """Compare ``A+(0)`` stages with orbit counts."""
    name = options.get("preset") or options.get("operad")
    if name is None:
        raise exceptions.DocumentError("dwyer", "pass an operad or a preset")
    max_j = _option(options, "max_j", settings.stages)
    operad = document.operad(name, max(max_j, _option(options, "bound", 0)))
    return reports.dwyer_report(name, dwyer_plus(operad, max_j))


def run_trees(document: Document, options: Options) -> reports.Report:
    """List reduced trees of a stage with their automorphism orders."""
    colorset = document.colorset
    source = pair_from_text(colorset, options["source"], "source")
    target = pair_from_text(colorset, options["target"], "target")
    vertex_bound = _option(options, "max_vertices", settings.max_vertices)
    operad = document.operad(options["operad"], options.get("bound"))
    count = _option(options, "count", 1)
    reduced = trees.enumerate_reduced(
        source=source,
        count=count,
        target=target,
        normal_support=operad.support(target.arity + vertex_bound),
        vertex_bound=vertex_bound,
        colorset=colorset,
    )
    return reports.trees_report(
        f"trees with {count} distinguished {source} at {target}",
        reduced,
    )


RUNNERS: dict[str, Runner] = {
    "validate": run_validate,
    "circle": run_circle,
    "free": run_free,
    "pushout": run_pushout,
    "dwyer": run_dwyer,
    "trees": run_trees,
}


def run(
    command: str,
    document: Document,
    options: Options,
) -> reports.Report:
    """Return report of one command.

    Raises:
        DocumentError: for unknown commands and missing options.

    """
    try:
        runner = RUNNERS[command]
    except KeyError:
        raise exceptions.DocumentError(
            "command",
            f"unknown command {command!r}, choose from {', '.join(RUNNERS)}",
        ) from None
    try:
        return runner(document, options)
    except KeyError as error:
        raise exceptions.DocumentError(
            command,
            f"option {error.args[0]!r} is required",
        ) from None


def _load(path: pathlib.Path | None) -> Document:
    if path is None:
        return Document(colorset=ColorSet.single())
    return parse(path.read_text(encoding="utf-8"))


def _emit(context: click.Context, command: str, **options: typing.Any) -> None:
    """Run command with options from the command line and print its report."""
    state = context.obj
    try:
        report = run(command, _load(state["document"]), options)
    except exceptions.OperadExtensionError as error:
        logger.warning("%s failed: %s", command, error)
        raise click.ClickException(str(error)) from error
    click.echo(report.render(state["emit"]), nl=False)
    if report.failed:
        context.exit(1)


@click.group(name="operad-ext")
@click.option(
    "--document",
    type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
    help="JSON document with colors, sequences, operads and maps.",
)
@click.option(
    "--emit",
    type=click.Choice(reports.EMIT_FORMATS),
    default="text",
    show_default=True,
)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=settings.log_level,
    show_default=True,
)
@click.pass_context
def cli(
    context: click.Context,
    document: pathlib.Path | None,
    emit: str,
    log_level: str,
) -> None:
    """Compute with colored operads over finite sets."""
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    context.ensure_object(dict)
    context.obj.update(document=document, emit=emit)


BOUND_OPTIONS = (
    ("--max-vertices", 1, settings.max_vertices),
    ("--stages", 0, settings.stages),
    ("--bound", 0, settings.bound),
)


def _bounds(function: Callable[..., typing.Any]) -> Callable[..., typing.Any]:
    """Add options bounding enumerations, unset ones fall back to settings."""
    for name, minimum, default in BOUND_OPTIONS:
        function = click.option(
            name,
            type=click.IntRange(min=minimum),
            default=None,
            help=f"Default {default}.",
        )(function)
    return function


@cli.command()
@click.option("--operad", required=True, help="Operad or preset name.")
@_bounds
@click.pass_context
def validate(context: click.Context, **options: typing.Any) -> None:
    """Check operad axioms up to an arity bound."""
    _emit(context, "validate", **options)


@cli.command(name="circle")
@click.option("--x", "x", required=True, help="Left sequence, I for the unit.")
@click.option(
    "--y",
    "y",
    required=True,
    help="Right sequence, I for the unit.",
)
@click.option("--witness", is_flag=True, help="Also check unit laws of X.")
@_bounds
@click.pass_context
def circle_command(context: click.Context, **options: typing.Any) -> None:
    """Compute circle product of two sequences."""
    _emit(context, "circle", **options)


@cli.command()
@click.option("--generators", required=True, help="Generating sequence.")
@click.option("--entry", required=True, help="Entry as (output;inputs).")
@_bounds
@click.pass_context
def free(context: click.Context, **options: typing.Any) -> None:
    """Enumerate an entry of a free operad."""
    _emit(context, "free", **options)


@cli.command()
@click.option("--map", "map", required=True, help="Declared cell.")
@click.option("--entry", required=True, help="Entry as (output;inputs).")
@click.option(
    "--oracle",
    is_flag=True,
    help="Cross-check with congruence closure.",
)
@click.option("--oracle-size", type=click.IntRange(min=1), default=None)
@_bounds
@click.pass_context
def pushout(context: click.Context, **options: typing.Any) -> None:
    """Compute stages of a free extension."""
    _emit(context, "pushout", **options)


@cli.command()
@click.option("--preset", default=None, help="Preset operad.")
@click.option("--operad", default=None, help="Declared operad.")
@click.option("--max-j", "max_j", type=click.IntRange(min=0), default=None)
@_bounds
@click.pass_context
def dwyer(context: click.Context, **options: typing.Any) -> None:
    """Compare stages of A+(0) with orbits of A(j)."""
    _emit(context, "dwyer", **options)


@cli.command(name="trees")
@click.option("--operad", required=True, help="Operad giving normal vertices.")
@click.option(
    "--source",
    required=True,
    help="Profile of distinguished vertices.",
)
@click.option("--target", required=True, help="Profile of trees.")
@click.option(
    "--count",
    type=click.IntRange(min=0),
    default=1,
    show_default=True,
)
@_bounds
@click.pass_context
def trees_command(context: click.Context, **options: typing.Any) -> None:
    """List reduced trees with automorphism orders."""
    _emit(context, "trees", **options)


@cli.command()
@click.pass_context
def batch(context: click.Context) -> None:
    """Run commands listed in the document."""
    state = context.obj
    try:
        document = _load(state["document"])
        results = [
            run(command.command, document, command.options)
            for command in document.commands
        ]
    except exceptions.OperadExtensionError as error:
        logger.warning("batch failed: %s", error)
        raise click.ClickException(str(error)) from error
    for report in results:
        click.echo(report.render(state["emit"]), nl=False)
    if any(report.failed for report in results):
        context.exit(1)
