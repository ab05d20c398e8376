from .commands import RUNNERS, cli, run


def main() -> None:
    """Entry point of ``operad-ext``."""
    cli(obj={})


__all__ = ["RUNNERS", "cli", "main", "run"]
