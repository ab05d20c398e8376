"""Equivariant interpolation between ``X^t`` and ``Y^t``.

``Q^t_q`` is built by pushouts over ``Q^t_{q-1}``: the part of ``Y^t``
allowed to have ``q`` coordinates outside of ``X`` is glued in from
``(X^(t-q) x Y^q)`` induced up to the symmetric group. Every element is
realized as a tuple in ``Y^t``, which makes the pushouts computable and
lets callers compare the result with the plain subset description.

"""

import dataclasses
import itertools
import logging
import math
import typing
from collections.abc import Mapping

from .. import exceptions, fincat, profiles, utils

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class QObject:
    """``Q^t_q`` as a set acted on by the symmetric group on ``t`` points.

    ``realization`` sends each element to its tuple in ``Y^t``.

    """

    t: int
    q: int
    carrier: fincat.GSet
    realization: Mapping[typing.Any, tuple[typing.Any, ...]]

    def __len__(self) -> int:
        return len(self.carrier)

    @property
    def tuples(self) -> frozenset[tuple[typing.Any, ...]]:
        """Return realized tuples."""
        return frozenset(self.realization.values())

    def __contains__(self, values: object) -> bool:
        return values in self.tuples


def _power_gset(
    carrier: fincat.FinSet,
    degree: int,
) -> fincat.GSet:
    """Return ``carrier^degree`` acted on by permuting coordinates."""
    return fincat.GSet(
        base=fincat.FinSet.of(
            itertools.product(carrier.elements, repeat=degree),
        ),
        group=fincat.PermGroup.symmetric(degree),
        action=utils.permute,
    )


def _pair_action(
    first: typing.Callable[[typing.Any, typing.Any], typing.Any],
    second: typing.Callable[[typing.Any, typing.Any], typing.Any],
) -> typing.Callable[[tuple, tuple], tuple]:
    def action(element: tuple, group_element: tuple) -> tuple:
        return (
            first(element[0], group_element[0]),
            second(element[1], group_element[1]),
        )

    return action


class QConstruction:
    """Memoized Q objects of one injection ``i: X -> Y``.

    Raises:
        NonInjectiveAttachmentError: if ``i`` is not injective.

    """

    def __init__(self, inclusion: fincat.FinMap) -> None:
        inclusion.validate()
        if not inclusion.is_injective:
            raise exceptions.NonInjectiveAttachmentError(
                "Q objects are computed for injections only",
            )
        self.inclusion = inclusion
        self._cache: dict[tuple[int, int], QObject] = {}

    def include(
        self,
        values: tuple[typing.Any, ...],
    ) -> tuple[typing.Any, ...]:
        """Return tuple of ``X`` as tuple of ``Y``."""
        return tuple(self.inclusion(value) for value in values)

    def __call__(self, t: int, q: int) -> QObject:
        if not 0 <= q <= t:
            raise exceptions.OperadExtensionError(
                f"Q object needs 0 <= q <= t, got t={t}, q={q}",
            )
        if (t, q) not in self._cache:
            self._cache[(t, q)] = self._build(t, q)
        return self._cache[(t, q)]

    def _build(self, t: int, q: int) -> QObject:
        if q == t:
            carrier = _power_gset(self.inclusion.target, t)
            return QObject(
                t=t,
                q=q,
                carrier=carrier,
                realization={values: values for values in carrier},
            )
        if q == 0:
            carrier = _power_gset(self.inclusion.source, t)
            return QObject(
                t=t,
                q=q,
                carrier=carrier,
                realization={
                    values: self.include(values) for values in carrier
                },
            )
        return self._glue(t, q)

    def _glue(self, t: int, q: int) -> QObject:
        smaller = self(q, q - 1)
        previous = self(t, q - 1)
        fixed = _power_gset(self.inclusion.source, t - q)
        free = _power_gset(self.inclusion.target, q)
        _, embedding = profiles.concat_homomorphism(
            (tuple(range(t - q)), tuple(range(q))),
        )
        top = fincat.induce(
            fincat.GSet(
                base=fincat.FinSet.of(
                    itertools.product(
                        fixed.base.elements,
                        smaller.carrier.base.elements,
                    ),
                ),
                group=embedding.source,
                action=_pair_action(fixed.act, smaller.carrier.act),
            ),
            embedding,
            check=False,
        )
        bottom = fincat.induce(
            fincat.GSet(
                base=fincat.FinSet.of(
                    itertools.product(fixed.base.elements, free.base.elements),
                ),
                group=embedding.source,
                action=_pair_action(fixed.act, free.act),
            ),
            embedding,
            check=False,
        )
        by_tuple = {
            values: element
            for element, values in previous.realization.items()
        }
        identity = bottom.group.identity

        def realize_top(element: tuple) -> tuple[typing.Any, ...]:
            (values, inner), coset = element
            return utils.permute(
                self.include(values) + smaller.realization[inner],
                coset,
            )

        def realize_bottom(element: tuple) -> tuple[typing.Any, ...]:
            (values, free_values), coset = element
            return utils.permute(self.include(values) + free_values, coset)

        attaching = fincat.FinMap(
            source=top.base,
            target=previous.carrier.base,
            mapping={
                element: by_tuple[realize_top(element)] for element in top
            },
        )
        including = fincat.FinMap(
            source=top.base,
            target=bottom.base,
            mapping={
                element: bottom.act(
                    (
                        (element[0][0], smaller.realization[element[0][1]]),
                        element[1],
                    ),
                    identity,
                )
                for element in top
            },
        )
        square = fincat.pushout(attaching, including)
        realization = {}
        for tag, element in square.carrier:
            realization[(tag, element)] = (
                previous.realization[element]
                if tag == fincat.LEFT_TAG
                else realize_bottom(element)
            )
        if len(set(realization.values())) != len(realization):
            raise exceptions.OperadExtensionError(
                f"Q^{t}_{q} is not realized injectively in Y^{t}",
            )
        by_realization = {
            values: element for element, values in realization.items()
        }

        def action(element: tuple, group_element: utils.Permutation) -> tuple:
            values = utils.permute(realization[element], group_element)
            return by_realization[values]

        logger.debug("Q^%s_%s has %s elements", t, q, len(realization))
        return QObject(
            t=t,
            q=q,
            carrier=fincat.GSet(
                base=square.carrier,
                group=fincat.PermGroup.symmetric(t),
                action=action,
            ),
            realization=realization,
        )


def q_object(inclusion: fincat.FinMap, t: int, q: int) -> QObject:
    """Return ``Q^t_q`` of an injection."""
    return QConstruction(inclusion)(t, q)


def q_cardinality(source_size: int, target_size: int, t: int, q: int) -> int:
    """Return size of ``Q^t_q`` for an injection of sets of given sizes."""
    return sum(
        math.comb(t, j)
        * (target_size - source_size) ** j
        * source_size ** (t - j)
        for j in range(q + 1)
    )


def subset_model(
    inclusion: fincat.FinMap,
    t: int,
    q: int,
) -> frozenset[tuple[typing.Any, ...]]:
    """Return tuples of ``Y^t`` with at most ``q`` entries outside ``X``."""
    image = {inclusion(element) for element in inclusion.source}
    return frozenset(
        values
        for values in itertools.product(inclusion.target.elements, repeat=t)
        if sum(value not in image for value in values) <= q
    )
