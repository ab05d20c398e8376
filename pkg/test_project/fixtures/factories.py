import typing

import factory
import factory.random

from operad_extensions import fincat
from operad_extensions.operads import TableOperad, transformations, weights
from operad_extensions.profiles import ColorSet
from operad_extensions.symseq import Key, SymSeq


def random_entries(
    colorset: ColorSet,
    max_arity: int,
    max_size: int,
) -> dict[Key, fincat.GSet]:
    """Generate entries with at most ``max_size`` elements each.

    Entries with two elements at a profile fixed by a transposition are
    acted on regularly half of the time, others are acted on trivially.

    """
    randgen = factory.random.randgen
    entries = {}
    for representative in colorset.representatives(max_arity):
        group = fincat.PermGroup.stabilizer(representative)
        for output in colorset:
            size = randgen.randint(0, max_size)
            if not size:
                continue
            elements = fincat.FinSet.of(
                f"{output}{''.join(representative)}{index}"
                for index in range(size)
            )
            if size == 2 and group.order == 2 and randgen.random() < 0.5:
                first, second = elements
                (swap,) = (
                    permutation
                    for permutation in group
                    if permutation != group.identity
                )
                entries[(output, representative)] = fincat.GSet.from_table(
                    elements,
                    group,
                    {swap: {first: second, second: first}},
                )
            else:
                entries[(output, representative)] = fincat.GSet.trivial(
                    elements,
                    group,
                )
    return entries


class SymSeqFactory(factory.Factory):
    """Random finite symmetric sequence.

    Usage:
        SymSeqFactory(colorset=ColorSet(("a", "b")), max_arity=2)
    """

    colorset = factory.LazyFunction(ColorSet.single)
    table = factory.LazyAttribute(
        lambda sequence: random_entries(
            sequence.colorset,
            sequence.max_arity,
            sequence.max_size,
        ),
    )

    class Meta:
        model = SymSeq

    class Params:
        max_arity = 2
        max_size = 2

    @classmethod
    def _create(
        cls,
        model_class: type[SymSeq],
        *args: typing.Any,
        **kwargs: typing.Any,
    ) -> SymSeq:
        """Validate entries through `SymSeq.build`."""
        return model_class.build(kwargs["colorset"], kwargs["table"])

    _build = _create


class WeightsOperadFactory(factory.Factory):
    """Operad of residues with a random modulus."""

    modulus = factory.Faker("pyint", min_value=1, max_value=4)
    arity_bound = 4

    class Meta:
        model = weights


class TransformationsOperadFactory(factory.Factory):
    """Operad of a monoid generated by one random map of two points."""

    size = 2
    maps = factory.LazyFunction(
        lambda: [
            tuple(factory.random.randgen.randrange(2) for _ in range(2)),
        ],
    )
    arity_bound = 4

    class Meta:
        model = transformations


class InjectionFactory(factory.Factory):
    """Random injection ``range(source_size) -> range(target_size)``."""

    source = factory.LazyAttribute(
        lambda injection: fincat.FinSet.of(range(injection.source_size)),
    )
    target = factory.LazyAttribute(
        lambda injection: fincat.FinSet.of(range(injection.target_size)),
    )
    mapping = factory.LazyAttribute(
        lambda injection: dict(
            zip(
                range(injection.source_size),
                factory.random.randgen.sample(
                    range(injection.target_size),
                    injection.source_size,
                ),
                strict=True,
            ),
        ),
    )

    class Meta:
        model = fincat.FinMap

    class Params:
        source_size = 1
        target_size = 2


def table_operads(count: int) -> list[TableOperad]:
    """Return random finite operads of both factories."""
    operads: list[TableOperad] = []
    for index in range(count):
        factory_class = (
            WeightsOperadFactory if index % 2 else TransformationsOperadFactory
        )
        operads.append(factory_class())
    return operads


CORPUS_COLORSETS = (ColorSet.single(), ColorSet(("a", "b")))


def symseq_corpus(count: int) -> list[SymSeq]:
    """Return small random sequences alternating between color sets.

    Entries have arity at most 2 and at most 2 elements.

    """
    return [
        SymSeqFactory(
            colorset=CORPUS_COLORSETS[index % len(CORPUS_COLORSETS)],
            max_arity=2,
            max_size=2,
        )
        for index in range(count)
    ]


def symseq_triples(count: int) -> list[tuple[SymSeq, SymSeq, SymSeq]]:
    """Return triples of random sequences sharing a color set."""
    triples = []
    for index in range(count):
        colorset = CORPUS_COLORSETS[index % len(CORPUS_COLORSETS)]
        first, second, third = (
            SymSeqFactory(colorset=colorset, max_arity=2, max_size=2)
            for _ in range(3)
        )
        triples.append((first, second, third))
    return triples
