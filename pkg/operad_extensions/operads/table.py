import dataclasses
import itertools
import logging
import typing
from collections.abc import Callable, Iterator, Mapping, Sequence

from .. import exceptions, fincat
from ..profiles import Color, ColorSet, Profile
from ..symseq import Key
from .core import Bottom, Operad

logger = logging.getLogger(__name__)

EntryRule = Callable[[Color, Profile], fincat.GSet]
CompositionRule = Callable[
    [Color, Profile, typing.Any, Sequence[Bottom]],
    typing.Any,
]
CompositionKey = tuple[Color, Profile, typing.Any, tuple[Bottom, ...]]


@dataclasses.dataclass(frozen=True, eq=False)
class TableOperad(Operad):
    """Operad given by finite tables or rules on representatives.

    ``entries`` maps keys to entries or computes them. ``composition`` is
    either a table keyed by ``(output, representative, element, bottoms)``
    or a rule with the signature of `Operad.compose_representatives`.
    Entries are known up to ``arity_bound``.

    """

    colorset: ColorSet
    entries: Mapping[Key, fincat.GSet] | EntryRule
    units: Mapping[Color, typing.Any]
    composition: Mapping[CompositionKey, typing.Any] | CompositionRule
    arity_bound: int
    name: str = "operad"

    def entry(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return entry at a representative profile."""
        if len(representative) > self.arity_bound:
            raise exceptions.OperadExtensionError(
                f"Operad {self.name!r} is only known up to arity "
                f"{self.arity_bound}",
            )
        if callable(self.entries):
            return self.entries(output, representative)
        gset = self.entries.get((output, representative))
        if gset is None:
            return fincat.GSet.empty(
                fincat.PermGroup.stabilizer(representative),
            )
        return gset

    def unit_element(self, color: Color) -> typing.Any:
        """Return unit label of a color."""
        return self.units[color]

    def compose_representatives(
        self,
        output: Color,
        representative: Profile,
        element: typing.Any,
        bottoms: Sequence[Bottom],
    ) -> typing.Any:
        """Look up or compute composite of representatives.

        Raises:
            OperadExtensionError: if the composition table has no entry.

        """
        if callable(self.composition):
            return self.composition(output, representative, element, bottoms)
        key = (output, representative, element, tuple(bottoms))
        try:
            return self.composition[key]
        except KeyError:
            raise exceptions.OperadExtensionError(
                f"Operad {self.name!r} has no composite for {key!r}",
            ) from None

    def keys(self, arity_bound: int) -> list[Key]:
        """Return keys of non empty entries up to arity bound."""
        bound = min(arity_bound, self.arity_bound)
        if callable(self.entries):
            candidates: Iterator[Key] = (
                (output, representative)
                for representative in self.colorset.representatives(bound)
                for output in self.colorset
            )
        else:
            candidates = iter(self.entries)
        keys = [
            key
            for key in candidates
            if len(key[1]) <= bound and len(self.entry(*key))
        ]
        return sorted(keys, key=self._key_order)

    def _key_order(self, key: Key) -> tuple[int, ...]:
        output, representative = key
        return (
            self.colorset.rank(output),
            *self.colorset.profile_key(representative),
        )

    def composition_instances(
        self,
        bound: int,
    ) -> Iterator[tuple[Color, Profile, typing.Any, tuple[Bottom, ...]]]:
        """Iterate over composition inputs with total arity within bound."""
        keys = self.keys(bound)
        by_output: dict[Color, list[Profile]] = {}
        for output, representative in keys:
            by_output.setdefault(output, []).append(representative)
        for output, representative in keys:
            if not representative:
                continue
            choices = [by_output.get(color, []) for color in representative]
            for profiles_choice in itertools.product(*choices):
                if sum(map(len, profiles_choice)) > bound:
                    continue
                elements = [
                    [
                        (profile, element)
                        for element in self.entry(color, profile)
                    ]
                    for color, profile in zip(
                        representative,
                        profiles_choice,
                        strict=True,
                    )
                ]
                for top in self.entry(output, representative):
                    for bottoms in itertools.product(*elements):
                        yield output, representative, top, tuple(bottoms)

    def materialize(self, bound: int) -> "TableOperad":
        """Return operad with rules evaluated into tables up to bound."""
        entries = {key: self.entry(*key) for key in self.keys(bound)}
        composition = {
            instance: self.compose_representatives(*instance)
            for instance in self.composition_instances(bound)
        }
        logger.debug(
            "Materialized %s entries and %s composites of %s",
            len(entries),
            len(composition),
            self.name,
        )
        return dataclasses.replace(
            self,
            entries=entries,
            composition=composition,
            arity_bound=bound,
        )

    def with_composite(
        self,
        instance: CompositionKey,
        value: typing.Any,
    ) -> "TableOperad":
        """Return copy of a materialized operad with one composite replaced."""
        if callable(self.composition):
            raise exceptions.OperadExtensionError(
                "Only materialized operads have composition tables",
            )
        composition = dict(self.composition)
        composition[instance] = value
        return dataclasses.replace(self, composition=composition)
