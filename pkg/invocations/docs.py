import pathlib

import invoke
import saritasa_invocations

LOCAL_DOCS_DIR = pathlib.Path("docs/_build")
# Help texts of `operad-ext` included by docs/command_line.rst
USAGE_DIR = pathlib.Path("docs/_usage")
COMMANDS = ("validate", "circle", "free", "pushout", "dwyer", "trees", "batch")


@invoke.task
def usage(context: invoke.Context):
    """Write help of every ``operad-ext`` command for documentation."""
    saritasa_invocations.print_success("Collecting command line help")
    USAGE_DIR.mkdir(parents=True, exist_ok=True)
    (USAGE_DIR / "operad-ext.txt").write_text(
        context.run("operad-ext --help", hide=True).stdout,
    )
    for command in COMMANDS:
        result = context.run(f"operad-ext {command} --help", hide=True)
        (USAGE_DIR / f"{command}.txt").write_text(result.stdout)


@invoke.task(pre=[usage])
def build(context: invoke.Context, builder: str = "html"):
    """Build documentation with chosen sphinx builder."""
    saritasa_invocations.print_success(
        f"Start building of local {builder} documentation",
    )
    context.run(
        f"sphinx-build -E -a -b {builder} docs {LOCAL_DOCS_DIR / builder} "
        "--exception-on-warning",
    )
    saritasa_invocations.print_success("Building completed")
