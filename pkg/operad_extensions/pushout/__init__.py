from .dwyer import DwyerRow, dwyer_plus
from .filtration import (
    GENERATOR_TAG,
    NORMAL_TAG,
    AttachmentData,
    ExtensionOperad,
    Filtration,
    FiltrationStage,
    Reducer,
    TreeContribution,
    attachment,
    free_extension,
)
from .oracle import OracleResult, agrees, oracle_pushout
from .qconstruction import (
    QConstruction,
    QObject,
    q_cardinality,
    q_object,
    subset_model,
)

__all__ = [
    "GENERATOR_TAG",
    "NORMAL_TAG",
    "AttachmentData",
    "DwyerRow",
    "ExtensionOperad",
    "Filtration",
    "FiltrationStage",
    "OracleResult",
    "QConstruction",
    "QObject",
    "Reducer",
    "TreeContribution",
    "agrees",
    "attachment",
    "dwyer_plus",
    "free_extension",
    "oracle_pushout",
    "q_cardinality",
    "q_object",
    "subset_model",
]
