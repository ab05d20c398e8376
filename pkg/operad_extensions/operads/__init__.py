from .core import Operad, Operation, all_keys
from .endomorphism import (
    ColoredFinSet,
    MonoidTable,
    OperadMap,
    endomorphism,
    entry_size,
    monoid_structure_map,
    point_algebra,
)
from .free import FreeEntry, FreeOperad, free_operad, opc_entry
from .presets import (
    PRESETS,
    assoc,
    com,
    monoid_closure,
    preset,
    transformations,
    trivial,
    weights,
)
from .table import TableOperad
from .validation import check_algebra, validate_operad

__all__ = [
    "PRESETS",
    "ColoredFinSet",
    "FreeEntry",
    "FreeOperad",
    "MonoidTable",
    "Operad",
    "OperadMap",
    "Operation",
    "TableOperad",
    "all_keys",
    "assoc",
    "check_algebra",
    "com",
    "endomorphism",
    "entry_size",
    "free_operad",
    "monoid_closure",
    "monoid_structure_map",
    "opc_entry",
    "point_algebra",
    "preset",
    "transformations",
    "trivial",
    "validate_operad",
    "weights",
]
