import abc
import dataclasses
import itertools
import logging
import typing
from collections.abc import Iterator, Sequence

from .. import exceptions, fincat, profiles, utils
from ..profiles import Color, ColorSet, IOPair, Profile
from ..symseq import Key, SymSeq

logger = logging.getLogger(__name__)

Bottom = tuple[Profile, typing.Any]


@dataclasses.dataclass(frozen=True)
class Operation:
    """Element of an operad entry at an arbitrary input profile.

    ``element`` is the label of the representative entry, the operation is
    that element transported to ``inputs`` canonically.

    """

    output: Color
    inputs: Profile
    element: typing.Any

    @property
    def arity(self) -> int:
        """Return number of inputs."""
        return len(self.inputs)

    @property
    def io_pair(self) -> IOPair:
        """Return profile of operation."""
        return IOPair(self.inputs, self.output)

    def sort_key(self) -> str:
        """Return key for canonical ordering."""
        return f"{self.io_pair}{utils.element_key(self.element)!r}"

    def __str__(self) -> str:
        return f"{self.element}@{self.io_pair}"


class Operad(abc.ABC):
    """Colored operad with entries stored at orbit representatives.

    Subclasses provide entries, units and composition of representative
    elements, everything else (actions, composition at any profiles,
    partial composition) is derived here.

    """

    colorset: ColorSet

    @abc.abstractmethod
    def entry(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return entry at a representative profile."""

    @abc.abstractmethod
    def unit_element(self, color: Color) -> typing.Any:
        """Return label of the unit at ``(color; color)``."""

    @abc.abstractmethod
    def compose_representatives(
        self,
        output: Color,
        representative: Profile,
        element: typing.Any,
        bottoms: Sequence[Bottom],
    ) -> typing.Any:
        """Compose representative elements.

        ``bottoms[j]`` is a pair of representative profile and element
        plugged into slot ``j``. Returns label ``z`` of the representative
        entry whose transport to the concatenated profile is the composite.

        """

    @abc.abstractmethod
    def keys(self, arity_bound: int) -> list[Key]:
        """Return keys of non empty entries up to arity bound."""

    def entry_at(self, output: Color, profile: Profile) -> fincat.GSet:
        """Return entry at any profile."""
        profile = self.colorset.validate_profile(profile)
        return self.entry(output, self.colorset.representative(profile))

    def operations(self, output: Color, profile: Profile) -> list[Operation]:
        """Return all operations at a profile."""
        return [
            Operation(output, tuple(profile), element)
            for element in self.entry_at(output, profile)
        ]

    def unit(self, color: Color) -> Operation:
        """Return unit operation of a color."""
        return Operation(color, (color,), self.unit_element(color))

    def act(
        self,
        operation: Operation,
        permutation: utils.Permutation,
    ) -> Operation:
        """Return operation acted on by a permutation.

        Input ``i`` of the result feeds input ``permutation[i]`` of
        ``operation``.

        """
        if len(permutation) != operation.arity:
            raise exceptions.ColorMismatchError(
                f"Permutation {utils.format_permutation(permutation)} doesn't "
                f"act on operations of arity {operation.arity}",
            )
        element = self.entry_at(operation.output, operation.inputs).act(
            operation.element,
            profiles.stabilizer_element(
                operation.inputs,
                permutation,
                self.colorset,
            ),
        )
        return Operation(
            operation.output,
            utils.permute(operation.inputs, permutation),
            element,
        )

    def gamma(
        self,
        top: Operation,
        bottoms: Sequence[Operation],
    ) -> Operation:
        """Return operadic composite of ``top`` with ``bottoms``.

        Raises:
            ColorMismatchError: if number of bottoms differs from arity of
                ``top`` or a bottom has wrong output color.

        """
        if len(bottoms) != top.arity:
            raise exceptions.ColorMismatchError(
                f"Operation of arity {top.arity} can't be composed with "
                f"{len(bottoms)} operations",
            )
        for index, (color, bottom) in enumerate(
            zip(top.inputs, bottoms, strict=True),
        ):
            if bottom.output != color:
                raise exceptions.ColorMismatchError(
                    f"Input {index} has color {color!r}, operation plugged "
                    f"into it has output {bottom.output!r}",
                    index=index,
                )
        if not bottoms:
            return top
        colorset = self.colorset
        transport = profiles.transport(top.inputs, colorset)
        reordered = utils.permute(bottoms, utils.inverse(transport))
        representatives = [
            colorset.representative(bottom.inputs) for bottom in reordered
        ]
        composite = self.compose_representatives(
            top.output,
            colorset.representative(top.inputs),
            top.element,
            [
                (representative, bottom.element)
                for representative, bottom in zip(
                    representatives,
                    reordered,
                    strict=True,
                )
            ],
        )
        concatenated = tuple(itertools.chain.from_iterable(representatives))
        numbering = utils.compose(
            utils.compose(
                profiles.transport(concatenated, colorset),
                profiles.block_sum(
                    [
                        profiles.transport(bottom.inputs, colorset)
                        for bottom in reordered
                    ],
                ),
            ),
            profiles.block_permutation(
                transport,
                [bottom.arity for bottom in reordered],
            ),
        )
        inputs = tuple(
            itertools.chain.from_iterable(bottom.inputs for bottom in bottoms),
        )
        element = self.entry(
            top.output,
            colorset.representative(inputs),
        ).act(
            composite,
            utils.compose(
                numbering,
                utils.inverse(profiles.transport(inputs, colorset)),
            ),
        )
        return Operation(top.output, inputs, element)

    def compose_at(
        self,
        top: Operation,
        index: int,
        bottom: Operation,
    ) -> Operation:
        """Return partial composite plugging ``bottom`` into one input."""
        if not 0 <= index < top.arity:
            raise exceptions.ColorMismatchError(
                f"Operation of arity {top.arity} has no input {index}",
                index=index,
            )
        bottoms = [self.unit(color) for color in top.inputs]
        bottoms[index] = bottom
        return self.gamma(top, bottoms)

    def underlying(self, arity_bound: int) -> SymSeq:
        """Return underlying symmetric sequence up to arity bound."""
        return SymSeq(
            colorset=self.colorset,
            table={
                key: self.entry(*key) for key in self.keys(arity_bound)
            },
        )

    def support(self, arity_bound: int) -> list[IOPair]:
        """Return profiles of non empty entries up to arity bound."""
        return [
            IOPair(representative, output)
            for output, representative in self.keys(arity_bound)
        ]


def all_keys(colorset: ColorSet, arity_bound: int) -> Iterator[Key]:
    """Iterate over all entry keys up to arity bound."""
    for representative in colorset.representatives(arity_bound):
        for output in colorset:
            yield output, representative
