"""Endomorphism operads of colored finite sets and operad maps into them."""

import dataclasses
import functools
import itertools
import logging
import math
import typing
from collections.abc import Callable, Mapping, Sequence

from .. import exceptions, fincat, profiles, utils
from ..conf import settings
from ..profiles import Color, ColorSet, Profile
from ..symseq import Key
from .core import Bottom, Operad
from .table import TableOperad

logger = logging.getLogger(__name__)

Function = tuple[typing.Any, ...]


@dataclasses.dataclass(frozen=True)
class ColoredFinSet:
    """Family of finite sets indexed by colors."""

    colorset: ColorSet
    carriers: Mapping[Color, fincat.FinSet]

    def __post_init__(self) -> None:
        self.colorset.validate_profile(tuple(self.carriers))

    def carrier(self, color: Color) -> fincat.FinSet:
        """Return set of a color, undeclared carriers are empty."""
        return self.carriers.get(color, fincat.FinSet.empty())

    def power(self, profile: Profile) -> list[tuple[typing.Any, ...]]:
        """Return ``A_c`` as list of tuples in product order."""
        return list(
            itertools.product(
                *(self.carrier(color).elements for color in profile),
            ),
        )

    def index(self, profile: Profile, values: Sequence[typing.Any]) -> int:
        """Return position of a tuple in `power` order."""
        result = 0
        for color, value in zip(profile, values, strict=True):
            carrier = self.carrier(color)
            result = result * len(carrier) + carrier.elements.index(value)
        return result


def apply(
    carriers: ColoredFinSet,
    profile: Profile,
    function: Function,
    values: Sequence[typing.Any],
) -> typing.Any:
    """Evaluate function on ``A_profile`` stored as a value table."""
    return function[carriers.index(profile, values)]


def act_on_function(
    carriers: ColoredFinSet,
    profile: Profile,
    function: Function,
    permutation: utils.Permutation,
) -> Function:
    """Precompose function with a factor permutation.

    Result lives on ``A_(profile . permutation)`` and sends ``a`` to
    ``function(b)`` with ``b[permutation[i]] = a[i]``.

    """
    moved = utils.permute(profile, permutation)
    result = []
    for values in carriers.power(moved):
        source: list[typing.Any] = [None] * len(values)
        for position, value in enumerate(values):
            source[permutation[position]] = value
        result.append(apply(carriers, profile, function, source))
    return tuple(result)


def endomorphism(
    carriers: ColoredFinSet,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return endomorphism operad, ``End(d; c)`` is all maps ``A_c -> A_d``.

    Maps are stored as value tables over `ColoredFinSet.power`.

    """
    colorset = carriers.colorset
    arity_bound = settings.bound if arity_bound is None else arity_bound

    @functools.cache
    def entries(output: Color, representative: Profile) -> fincat.GSet:
        domain_size = len(carriers.power(representative))
        functions = itertools.product(
            carriers.carrier(output).elements,
            repeat=domain_size,
        )

        def action(
            function: Function,
            permutation: utils.Permutation,
        ) -> Function:
            return act_on_function(
                carriers,
                representative,
                function,
                permutation,
            )

        return fincat.GSet(
            base=fincat.FinSet(tuple(functions)),
            group=fincat.PermGroup.stabilizer(representative),
            action=action,
        )

    def composition(
        output: Color,
        representative: Profile,
        element: Function,
        bottoms: Sequence[Bottom],
    ) -> Function:
        concatenated = tuple(
            itertools.chain.from_iterable(profile for profile, _ in bottoms),
        )
        sizes = [len(profile) for profile, _ in bottoms]
        starts = utils.offsets(sizes)
        substituted = []
        for values in carriers.power(concatenated):
            inner = [
                apply(
                    carriers,
                    profile,
                    function,
                    values[start:start + size],
                )
                for (profile, function), start, size in zip(
                    bottoms,
                    starts,
                    sizes,
                    strict=True,
                )
            ]
            substituted.append(apply(carriers, representative, element, inner))
        return act_on_function(
            carriers,
            concatenated,
            tuple(substituted),
            utils.inverse(profiles.transport(concatenated, colorset)),
        )

    units = {}
    for color in colorset:
        units[color] = tuple(carriers.carrier(color).elements)
    logger.debug("Endomorphism operad of %s", dict(carriers.carriers))
    return TableOperad(
        colorset=colorset,
        entries=entries,
        units=units,
        composition=composition,
        arity_bound=arity_bound,
        name="End",
    )


@dataclasses.dataclass(frozen=True)
class OperadMap:
    """Map of operads given on representative elements."""

    source: Operad
    target: Operad
    mapping: Callable[[Key, typing.Any], typing.Any]

    def __call__(self, key: Key, element: typing.Any) -> typing.Any:
        return self.mapping(key, element)


@dataclasses.dataclass(frozen=True)
class MonoidTable:
    """Finite monoid given by its multiplication table."""

    elements: tuple[typing.Any, ...]
    table: Mapping[tuple[typing.Any, typing.Any], typing.Any]
    unit: typing.Any

    def multiply(self, values: Sequence[typing.Any]) -> typing.Any:
        """Return ordered product of values, unit for empty input."""
        result = self.unit
        for value in values:
            result = self.table[(result, value)]
        return result

    @property
    def is_associative(self) -> bool:
        """Return True if multiplication is associative."""
        return all(
            self.table[(self.table[(a, b)], c)]
            == self.table[(a, self.table[(b, c)])]
            for a, b, c in itertools.product(self.elements, repeat=3)
        )

    @property
    def is_unital(self) -> bool:
        """Return True if the unit is two sided."""
        return all(
            self.table[(self.unit, a)] == a == self.table[(a, self.unit)]
            for a in self.elements
        )

    @property
    def is_commutative(self) -> bool:
        """Return True if multiplication is commutative."""
        return all(
            self.table[(a, b)] == self.table[(b, a)]
            for a, b in itertools.product(self.elements, repeat=2)
        )

    def carriers(self, colorset: ColorSet | None = None) -> ColoredFinSet:
        """Return monoid as one colored set."""
        colorset = colorset or ColorSet.single()
        return ColoredFinSet(
            colorset=colorset,
            carriers={colorset.colors[0]: fincat.FinSet.of(self.elements)},
        )


def monoid_structure_map(
    operad: TableOperad,
    monoid: MonoidTable,
    arity_bound: int | None = None,
) -> OperadMap:
    """Return structure map of a monoid as algebra over assoc or com.

    An order ``s`` of the associative operad multiplies inputs in the order
    ``s[0], s[1], ...``; the commutative operation multiplies inputs in
    their given order.

    Raises:
        OperadExtensionError: for operads other than assoc and com.

    """
    if operad.name not in ("assoc", "com"):
        raise exceptions.OperadExtensionError(
            f"Monoids are algebras over assoc and com, not {operad.name!r}",
        )
    carriers = monoid.carriers(operad.colorset)
    target = endomorphism(
        carriers,
        operad.arity_bound if arity_bound is None else arity_bound,
    )

    def mapping(key: Key, element: typing.Any) -> Function:
        _, representative = key
        order = (
            element
            if operad.name == "assoc"
            else tuple(range(len(representative)))
        )
        return tuple(
            monoid.multiply([values[position] for position in order])
            for values in carriers.power(representative)
        )

    return OperadMap(source=operad, target=target, mapping=mapping)


def point_algebra(operad: Operad, arity_bound: int | None = None) -> OperadMap:
    """Return the unique algebra structure on a point."""
    colorset = operad.colorset
    carriers = ColoredFinSet(
        colorset=colorset,
        carriers={color: fincat.FinSet.singleton(0) for color in colorset},
    )
    target = endomorphism(
        carriers,
        settings.bound if arity_bound is None else arity_bound,
    )
    return OperadMap(
        source=operad,
        target=target,
        mapping=lambda key, element: (0,),
    )


def entry_size(
    carriers: ColoredFinSet,
    output: Color,
    profile: Profile,
) -> int:
    """Return number of maps ``A_profile -> A_output``."""
    domain = math.prod(len(carriers.carrier(color)) for color in profile)
    return len(carriers.carrier(output)) ** domain
