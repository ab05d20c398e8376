"""Colored symmetric sequences valued in finite sets."""

import dataclasses
import logging
import typing
from collections.abc import Iterable, Iterator, Mapping

from . import exceptions, fincat, profiles, utils
from .profiles import Color, ColorSet, Profile

logger = logging.getLogger(__name__)

Key = tuple[Color, Profile]


@dataclasses.dataclass(frozen=True)
class SymSeq:
    """Colored symmetric sequence stored on orbit representatives.

    ``table`` maps ``(output color, representative profile)`` to a set
    acted on by the stabilizer of the representative. Absent keys are
    empty. Element at any other profile ``c`` is labeled by the
    representative element ``x`` and means ``x . t(c)`` for the canonical
    transport ``t(c)``.

    """

    colorset: ColorSet
    table: Mapping[Key, fincat.GSet] = dataclasses.field(default_factory=dict)

    @classmethod
    def build(
        cls,
        colorset: ColorSet,
        entries: Mapping[Key, fincat.GSet],
    ) -> "SymSeq":
        """Create sequence validating keys and dropping empty entries."""
        table = {}
        for (output, profile), gset in entries.items():
            colorset.validate_profile((output,))
            orbit = profiles.orbit_of(tuple(profile), colorset)
            if orbit.representative != tuple(profile):
                raise exceptions.OperadExtensionError(
                    f"Entry ({output};{','.join(profile)}) is not stored at "
                    "its orbit representative",
                )
            if gset.group != orbit.stabilizer:
                raise exceptions.OperadExtensionError(
                    f"Entry ({output};{','.join(profile)}) must be acted on "
                    "by the stabilizer of its profile",
                )
            if len(gset):
                table[(output, tuple(profile))] = gset
        return cls(colorset=colorset, table=table)

    def get(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return entry at a representative, empty if absent."""
        gset = self.table.get((output, representative))
        if gset is None:
            return fincat.GSet.empty(
                profiles.orbit_of(representative, self.colorset).stabilizer,
            )
        return gset

    def keys(self) -> list[Key]:
        """Return non empty keys in canonical order."""
        return sorted(self.table, key=self.key_order)

    def items(self) -> Iterator[tuple[Key, fincat.GSet]]:
        """Iterate over non empty entries in canonical order."""
        for key in self.keys():
            yield key, self.table[key]

    def key_order(self, key: Key) -> tuple[int, ...]:
        """Return sort key of an entry key."""
        output, profile = key
        return (
            self.colorset.rank(output),
            *self.colorset.profile_key(profile),
        )

    @property
    def size(self) -> int:
        """Return total number of stored elements."""
        return sum(len(gset) for gset in self.table.values())

    @property
    def arity_bound(self) -> int:
        """Return largest arity of a non empty entry."""
        return max((len(profile) for _, profile in self.table), default=0)

    @property
    def is_empty(self) -> bool:
        """Return True if all entries are empty."""
        return not self.table

    def by_output(self) -> dict[Color, list[tuple[Profile, fincat.GSet]]]:
        """Return non empty entries grouped by output color."""
        grouped: dict[Color, list[tuple[Profile, fincat.GSet]]] = {}
        for (output, profile), gset in self.items():
            grouped.setdefault(output, []).append((profile, gset))
        return grouped


def transport_act(
    gset: fincat.GSet,
    profile: Profile,
    element: typing.Any,
    permutation: utils.Permutation,
    colorset: ColorSet,
) -> tuple[Profile, typing.Any]:
    """Act on an element labeled at ``profile`` by any permutation.

    Returns new profile and representative label of the image.

    """
    moved = utils.permute(profile, permutation)
    stabilizer_element = profiles.stabilizer_element(
        profile,
        permutation,
        colorset,
    )
    return moved, gset.act(element, stabilizer_element)


def entry(sequence: SymSeq, output: Color, profile: Profile) -> fincat.GSet:
    """Return value of a sequence at any profile.

    Elements are labeled by representative elements through canonical
    transport, the stabilizer of ``profile`` acts by conjugation.

    """
    profile = sequence.colorset.validate_profile(profile)
    representative = sequence.colorset.representative(profile)
    stored = sequence.get(output, representative)
    if profile == representative:
        return stored
    stabilizer = fincat.PermGroup.stabilizer(profile)
    transport = profiles.transport(profile, sequence.colorset)
    inverse = utils.inverse(transport)

    def action(
        element: typing.Any,
        permutation: utils.Permutation,
    ) -> typing.Any:
        conjugated = utils.compose(
            utils.compose(transport, permutation),
            inverse,
        )
        return stored.act(element, conjugated)

    return fincat.GSet(base=stored.base, group=stabilizer, action=action)


def transport_coherence(
    sequence: SymSeq,
    profile: Profile,
    permutation: utils.Permutation,
) -> utils.Permutation:
    """Return stabilizer element comparing two transports.

    Transport from the representative to ``profile`` followed by
    ``permutation`` differs from direct canonical transport to the moved
    profile by the returned element of the representative's stabilizer.

    Raises:
        OperadExtensionError: if the element does not stabilize the
            representative, which would mean transports are incoherent.

    """
    colorset = sequence.colorset
    element = profiles.stabilizer_element(profile, permutation, colorset)
    orbit = profiles.orbit_of(profile, colorset)
    if element not in orbit.stabilizer:
        raise exceptions.OperadExtensionError(
            f"Transport of {profile!r} by {permutation!r} is incoherent",
        )
    return element


def concentrated(
    colorset: ColorSet,
    family: Mapping[Color, Iterable[typing.Any]],
) -> SymSeq:
    """Return sequence concentrated in arity 0 with given values."""
    trivial = fincat.PermGroup.trivial(0)
    return SymSeq.build(
        colorset,
        {
            (color, ()): fincat.GSet.trivial(
                fincat.FinSet.of(elements),
                trivial,
            )
            for color, elements in family.items()
        },
    )


@dataclasses.dataclass(frozen=True)
class FreenessWitness:
    """Result of the levelwise freeness check.

    ``witness`` is the first ``(key, element, group element)`` with a non
    identity group element fixing the element.

    """

    is_free: bool
    witness: tuple[Key, typing.Any, utils.Permutation] | None = None

    def __bool__(self) -> bool:
        return self.is_free


def is_levelwise_free(sequence: SymSeq) -> FreenessWitness:
    """Check that every stabilizer acts freely on its entry."""
    for key, gset in sequence.items():
        identity = gset.group.identity
        for element in gset:
            for group_element in gset.group:
                if group_element == identity:
                    continue
                if gset.fixes(element, group_element):
                    logger.debug(
                        "%s is fixed by %s at %s",
                        element,
                        group_element,
                        key,
                    )
                    return FreenessWitness(
                        is_free=False,
                        witness=(key, element, group_element),
                    )
    return FreenessWitness(is_free=True)


@dataclasses.dataclass(frozen=True)
class SymSeqMap:
    """Map of symmetric sequences given per stored entry."""

    source: SymSeq
    target: SymSeq
    components: Mapping[Key, Mapping[typing.Any, typing.Any]]

    def __call__(self, key: Key, element: typing.Any) -> typing.Any:
        return self.components[key][element]

    def validate(self) -> None:
        """Check every component is total and equivariant.

        Raises:
            NotAnActionError: with axiom ``equivariance`` on the first
                element commuting badly with a stabilizer element.

        """
        for key, gset in self.source.items():
            component = self.components.get(key, {})
            target = self.target.get(*key)
            for element in gset:
                if element not in component:
                    raise exceptions.OperadExtensionError(
                        f"Map is not defined on {element!r} at {key!r}",
                    )
                if component[element] not in target:
                    raise exceptions.OperadExtensionError(
                        f"Image of {element!r} at {key!r} is not in target",
                    )
                for group_element in gset.group:
                    left = component[gset.act(element, group_element)]
                    right = target.act(component[element], group_element)
                    if left != right:
                        raise exceptions.NotAnActionError(
                            "equivariance",
                            (key, element, group_element),
                        )
