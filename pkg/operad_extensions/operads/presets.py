"""Operads used as recurring examples: associative, commutative, trivial."""

import functools
import typing
from collections.abc import Sequence

from .. import exceptions, fincat, utils
from ..conf import settings
from ..profiles import Color, ColorSet, Profile
from .core import Bottom
from .table import TableOperad

COMMUTATIVE_ELEMENT = "com"
UNIT_ELEMENT = "id"


def _single_color(colorset: ColorSet, name: str) -> Color:
    if len(colorset) != 1:
        raise exceptions.OperadExtensionError(
            f"Operad {name!r} is defined for one color only",
        )
    return colorset.colors[0]


@functools.lru_cache(maxsize=16)
def _regular_entry(arity: int) -> fincat.GSet:
    group = fincat.PermGroup.symmetric(arity)

    def action(
        element: utils.Permutation,
        permutation: utils.Permutation,
    ) -> utils.Permutation:
        return utils.compose(utils.inverse(permutation), element)

    return fincat.GSet(
        base=fincat.FinSet.of(group.elements),
        group=group,
        action=action,
    )


def _block_substitution(
    output: Color,
    representative: Profile,
    element: utils.Permutation,
    bottoms: Sequence[Bottom],
) -> utils.Permutation:
    """Substitute orders of blocks into an order of slots."""
    starts = utils.offsets([len(profile) for profile, _ in bottoms])
    result: list[int] = []
    for slot in element:
        _, order = bottoms[slot]
        result.extend(starts[slot] + position for position in order)
    return tuple(result)


def assoc(
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return associative operad, ``A(n)`` is the symmetric group.

    Operations are linear orders of inputs written as permutations, the
    group acts freely by reordering.

    """
    colorset = colorset or ColorSet.single()
    color = _single_color(colorset, "assoc")
    arity_bound = settings.bound if arity_bound is None else arity_bound

    def entries(output: Color, representative: Profile) -> fincat.GSet:
        if output != color:
            return fincat.GSet.empty(
                fincat.PermGroup.stabilizer(representative),
            )
        return _regular_entry(len(representative))

    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: (0,)},
        composition=_block_substitution,
        arity_bound=arity_bound,
        name="assoc",
    )


def _constant(
    output: Color,
    representative: Profile,
    element: typing.Any,
    bottoms: Sequence[Bottom],
) -> str:
    return COMMUTATIVE_ELEMENT


def com(
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return commutative operad, every entry is a point."""
    colorset = colorset or ColorSet.single()
    arity_bound = settings.bound if arity_bound is None else arity_bound
    point = fincat.FinSet.singleton(COMMUTATIVE_ELEMENT)

    def entries(output: Color, representative: Profile) -> fincat.GSet:
        return fincat.GSet.trivial(
            point,
            fincat.PermGroup.stabilizer(representative),
        )

    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: COMMUTATIVE_ELEMENT for color in colorset},
        composition=_constant,
        arity_bound=arity_bound,
        name="com",
    )


def trivial(
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return initial operad consisting of units only."""
    colorset = colorset or ColorSet.single()
    arity_bound = settings.bound if arity_bound is None else arity_bound
    point = fincat.FinSet.singleton(UNIT_ELEMENT)
    entries = {
        (color, (color,)): fincat.GSet.trivial(
            point,
            fincat.PermGroup.trivial(1),
        )
        for color in colorset
    }

    def composition(
        output: Color,
        representative: Profile,
        element: typing.Any,
        bottoms: Sequence[Bottom],
    ) -> str:
        return UNIT_ELEMENT

    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: UNIT_ELEMENT for color in colorset},
        composition=composition,
        arity_bound=max(arity_bound, 1),
        name="trivial",
    )


def weights(
    modulus: int,
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return operad of residues, every entry is ``Z/modulus``.

    Groups act trivially, composition adds all residues involved.

    """
    colorset = colorset or ColorSet.single()
    color = _single_color(colorset, "weights")
    arity_bound = settings.bound if arity_bound is None else arity_bound
    residues = fincat.FinSet.of(range(modulus))

    def entries(output: Color, representative: Profile) -> fincat.GSet:
        return fincat.GSet.trivial(
            residues if output == color else fincat.FinSet.empty(),
            fincat.PermGroup.stabilizer(representative),
        )

    def composition(
        output: Color,
        representative: Profile,
        element: int,
        bottoms: Sequence[Bottom],
    ) -> int:
        return (element + sum(value for _, value in bottoms)) % modulus

    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: 0},
        composition=composition,
        arity_bound=arity_bound,
        name=f"weights{modulus}",
    )


def monoid_closure(
    size: int,
    maps: Sequence[utils.Permutation],
) -> tuple[tuple[int, ...], ...]:
    """Return maps of ``0..size-1`` generated by ``maps`` under composition."""
    identity = tuple(range(size))
    found = {identity}
    frontier = [identity]
    while frontier:
        current = frontier.pop()
        for generator in maps:
            product = tuple(generator[point] for point in current)
            if product not in found:
                found.add(product)
                frontier.append(product)
    return tuple(sorted(found))


def transformations(
    size: int,
    maps: Sequence[tuple[int, ...]],
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return operad of a monoid of maps acting on points.

    ``A(0)`` holds points ``0..size-1``, ``A(1)`` the monoid generated by
    ``maps`` and every other entry is empty. A map composed with a point
    evaluates it, maps compose as functions.

    """
    colorset = colorset or ColorSet.single()
    color = _single_color(colorset, "transformations")
    arity_bound = settings.bound if arity_bound is None else arity_bound
    for values in maps:
        in_range = all(0 <= value < size for value in values)
        if len(values) != size or not in_range:
            raise exceptions.OperadExtensionError(
                f"{values!r} is not a map of {size} points",
            )
    table = {
        (color, ()): fincat.FinSet.of(range(size)),
        (color, (color,)): fincat.FinSet.of(monoid_closure(size, maps)),
    }

    def entries(output: Color, representative: Profile) -> fincat.GSet:
        return fincat.GSet.trivial(
            table.get((output, representative), fincat.FinSet.empty()),
            fincat.PermGroup.stabilizer(representative),
        )

    def composition(
        output: Color,
        representative: Profile,
        element: tuple[int, ...] | int,
        bottoms: Sequence[Bottom],
    ) -> tuple[int, ...] | int:
        if not bottoms:
            return element
        ((profile, bottom),) = bottoms
        if not profile:
            return element[bottom]  # type: ignore[index]
        return utils.compose(element, bottom)  # type: ignore[arg-type]

    return TableOperad(
        colorset=colorset,
        entries=entries,
        units={color: tuple(range(size))},
        composition=composition,
        arity_bound=arity_bound,
        name="transformations",
    )


PRESETS = {
    "assoc": assoc,
    "com": com,
    "trivial": trivial,
}


def preset(
    name: str,
    colorset: ColorSet | None = None,
    arity_bound: int | None = None,
) -> TableOperad:
    """Return preset operad by name.

    Raises:
        OperadExtensionError: for unknown names.

    """
    try:
        factory = PRESETS[name]
    except KeyError:
        raise exceptions.OperadExtensionError(
            f"Unknown preset {name!r}, choose from {', '.join(PRESETS)}",
        ) from None
    return factory(colorset, arity_bound)
