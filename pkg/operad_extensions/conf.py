import dataclasses

import decouple

# Default configuration
# Maximum number of vertices explored by tree enumerations
DEFAULT_MAX_VERTICES = 6
# Number of filtration stages computed by default
DEFAULT_STAGES = 4
# Arity bound used by validation and materialization of presets
DEFAULT_BOUND = 3
# Largest entry a witness or oracle computation is allowed to build
DEFAULT_ENTRY_SIZE_CAP = 5000
# Vertex bound for terms of the congruence closure oracle
DEFAULT_ORACLE_SIZE_BOUND = 7
DEFAULT_LOG_LEVEL = "WARNING"


@dataclasses.dataclass(frozen=True)
class Settings:
    """Package settings.

    Every value can be overridden by ``OPERAD_EXT_*`` environment variables
    (or an ``.env`` file), command line flags take precedence over them.

    """

    max_vertices: int = DEFAULT_MAX_VERTICES
    stages: int = DEFAULT_STAGES
    bound: int = DEFAULT_BOUND
    entry_size_cap: int = DEFAULT_ENTRY_SIZE_CAP
    oracle_size_bound: int = DEFAULT_ORACLE_SIZE_BOUND
    log_level: str = DEFAULT_LOG_LEVEL


def load_settings() -> Settings:
    """Read settings from environment."""
    return Settings(
        max_vertices=decouple.config(
            "OPERAD_EXT_MAX_VERTICES",
            default=DEFAULT_MAX_VERTICES,
            cast=int,
        ),
        stages=decouple.config(
            "OPERAD_EXT_STAGES",
            default=DEFAULT_STAGES,
            cast=int,
        ),
        bound=decouple.config(
            "OPERAD_EXT_BOUND",
            default=DEFAULT_BOUND,
            cast=int,
        ),
        entry_size_cap=decouple.config(
            "OPERAD_EXT_ENTRY_SIZE_CAP",
            default=DEFAULT_ENTRY_SIZE_CAP,
            cast=int,
        ),
        oracle_size_bound=decouple.config(
            "OPERAD_EXT_ORACLE_SIZE_BOUND",
            default=DEFAULT_ORACLE_SIZE_BOUND,
            cast=int,
        ),
        log_level=decouple.config(
            "OPERAD_EXT_LOG_LEVEL",
            default=DEFAULT_LOG_LEVEL,
        ),
    )


settings = load_settings()
