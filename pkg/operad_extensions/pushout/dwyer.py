"""Adjoining a constant to a single colored operad.

Attaching one free generator of arity zero to ``A`` gives the operad
``A+`` whose arity zero entry gains, at stage ``j``, one element for each
orbit of ``A(j)`` under the symmetric group.

"""

import dataclasses
import logging

from .. import exceptions, fincat
from ..operads import Operad
from ..profiles import IOPair
from .filtration import Filtration, attachment

logger = logging.getLogger(__name__)

CONSTANT = "∗"


@dataclasses.dataclass(frozen=True)
class DwyerRow:
    """Stage ``j`` of ``A+(0)`` next to the orbit count of ``A(j)``."""

    arity: int
    added: int
    orbits: int

    @property
    def agrees(self) -> bool:
        """Return True if both counts are equal."""
        return self.added == self.orbits


def dwyer_plus(ambient: Operad, max_arity: int) -> list[DwyerRow]:
    """Return rows ``j = 1 .. max_arity`` for a single colored operad.

    Stage zero is ``A(0)`` itself and gets no row.

    Raises:
        OperadExtensionError: if the operad has more than one color.

    """
    if len(ambient.colorset) != 1:
        raise exceptions.OperadExtensionError(
            "Constants are adjoined to single colored operads only",
        )
    (color,) = ambient.colorset.colors
    constant = IOPair((), color)
    data = attachment(ambient, constant, attaching={}, free=[CONSTANT])
    filtration = Filtration(data, constant, vertex_bound=max_arity + 1)
    rows = []
    for arity in range(1, max_arity + 1):
        orbits, _ = fincat.quotient_by_action(
            ambient.entry(color, (color,) * arity),
        )
        stage = filtration.stage(arity)
        rows.append(
            DwyerRow(arity=arity, added=stage.added, orbits=len(orbits)),
        )
        logger.info(
            "Stage %s of A+(0) adds %s elements, A(%s) has %s orbits",
            arity,
            stage.added,
            arity,
            len(orbits),
        )
    return rows
