"""Finite sets, finite groups, group actions and their colimits."""

import abc
import dataclasses
import functools
import itertools
import logging
import typing
from collections.abc import Callable, Iterable, Iterator, Mapping

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from . import exceptions, utils

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class FinSet:
    """Finite set with elements kept in canonical order."""

    elements: tuple[typing.Any, ...] = ()

    @classmethod
    def of(cls, elements: Iterable[typing.Any]) -> "FinSet":
        """Create set from elements, rejecting duplicates."""
        ordered = utils.sorted_elements(elements)
        for previous, current in itertools.pairwise(ordered):
            if previous == current:
                raise exceptions.OperadExtensionError(
                    f"Duplicate element {current!r}",
                )
        return cls(tuple(ordered))

    @classmethod
    def empty(cls) -> "FinSet":
        """Return initial object."""
        return cls(())

    @classmethod
    def singleton(cls, element: typing.Any = ()) -> "FinSet":
        """Return one point set."""
        return cls((element,))

    @functools.cached_property
    def _members(self) -> frozenset[typing.Any]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[typing.Any]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._members


@dataclasses.dataclass(frozen=True)
class FinMap:
    """Total function between finite sets."""

    source: FinSet
    target: FinSet
    mapping: Mapping[typing.Any, typing.Any]

    def __call__(self, element: typing.Any) -> typing.Any:
        return self.mapping[element]

    def validate(self) -> None:
        """Check that map is total and lands in target."""
        for element in self.source:
            if element not in self.mapping:
                raise exceptions.OperadExtensionError(
                    f"Map is not defined on {element!r}",
                )
            if self.mapping[element] not in self.target:
                raise exceptions.OperadExtensionError(
                    f"Image of {element!r} is outside of target",
                )

    @property
    def is_injective(self) -> bool:
        """Return True if no two elements share an image."""
        images = [self.mapping[element] for element in self.source]
        return len(set(images)) == len(images)


class FiniteGroup(abc.ABC):
    """Finite group given by the explicit list of its elements."""

    @property
    @abc.abstractmethod
    def elements(self) -> tuple[typing.Any, ...]:
        """Return all elements, identity first."""

    @property
    @abc.abstractmethod
    def identity(self) -> typing.Any:
        """Return neutral element."""

    @abc.abstractmethod
    def mul(self, first: typing.Any, second: typing.Any) -> typing.Any:
        """Return product of two elements."""

    @abc.abstractmethod
    def inverse(self, element: typing.Any) -> typing.Any:
        """Return inverse element."""

    @functools.cached_property
    def _members(self) -> frozenset[typing.Any]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        """Return number of elements."""
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[typing.Any]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._members

    def validate(self) -> None:
        """Check group axioms on the element list."""
        if self.identity not in self:
            raise exceptions.NotAGroupError("Identity is missing")
        for first in self.elements:
            if self.inverse(first) not in self:
                raise exceptions.NotAGroupError(
                    f"Inverse of {first!r} is missing",
                )
            for second in self.elements:
                if self.mul(first, second) not in self:
                    raise exceptions.NotAGroupError(
                        f"Product of {first!r} and {second!r} is missing",
                    )


@dataclasses.dataclass(frozen=True, eq=True)
class PermGroup(FiniteGroup):
    """Group of permutations of ``degree`` points.

    Permutations are tuples where item ``i`` is the image of ``i``, the
    product is `utils.compose`.

    """

    degree: int
    members: tuple[utils.Permutation, ...]

    @property
    def elements(self) -> tuple[utils.Permutation, ...]:
        """Return all permutations in lexicographic order."""
        return self.members

    @property
    def identity(self) -> utils.Permutation:
        """Return identity permutation."""
        return utils.identity_permutation(self.degree)

    def mul(
        self,
        first: utils.Permutation,
        second: utils.Permutation,
    ) -> utils.Permutation:
        """Return product of permutations."""
        return utils.compose(first, second)

    def inverse(self, element: utils.Permutation) -> utils.Permutation:
        """Return inverse permutation."""
        return utils.inverse(element)

    @classmethod
    def from_elements(
        cls,
        degree: int,
        elements: Iterable[utils.Permutation],
    ) -> "PermGroup":
        """Create group from explicit elements, the list is validated."""
        group = cls(degree, tuple(sorted(set(map(tuple, elements)))))
        group.validate()
        return group

    @classmethod
    @functools.lru_cache(maxsize=16)
    def symmetric(cls, degree: int) -> "PermGroup":
        """Return full symmetric group of given degree."""
        return cls(degree, tuple(utils.all_permutations(degree)))

    @classmethod
    @functools.lru_cache(maxsize=16)
    def trivial(cls, degree: int) -> "PermGroup":
        """Return group consisting of identity only."""
        return cls(degree, (utils.identity_permutation(degree),))

    @classmethod
    @functools.lru_cache(maxsize=1024)
    def stabilizer(cls, sequence: tuple[typing.Any, ...]) -> "PermGroup":
        """Return permutations fixing a sequence (a Young subgroup).

        It's a product of full symmetric groups on positions holding equal
        values.

        """
        blocks: dict[typing.Any, list[int]] = {}
        for position, value in enumerate(sequence):
            blocks.setdefault(value, []).append(position)
        factors = [
            [
                dict(zip(positions, images, strict=True))
                for images in itertools.permutations(positions)
            ]
            for positions in blocks.values()
        ]
        members = []
        for choice in itertools.product(*factors):
            images: dict[int, int] = {}
            for part in choice:
                images.update(part)
            members.append(tuple(images[i] for i in range(len(sequence))))
        return cls(len(sequence), tuple(sorted(members)))

    @classmethod
    def generated(
        cls,
        degree: int,
        generators: Iterable[utils.Permutation],
    ) -> "PermGroup":
        """Return subgroup generated by permutations.

        The closure is delegated to sympy.

        """
        identity = utils.identity_permutation(degree)
        generators = [
            tuple(generator)
            for generator in generators
            if tuple(generator) != identity
        ]
        if not generators:
            return cls.trivial(degree)
        group = SympyPermutationGroup(
            [
                SympyPermutation(list(generator), size=degree)
                for generator in generators
            ],
        )
        return cls(
            degree,
            tuple(sorted(tuple(af) for af in group.generate(af=True))),
        )


@dataclasses.dataclass(frozen=True)
class ProductGroup(FiniteGroup):
    """Direct product of finite groups, elements are tuples."""

    factors: tuple[FiniteGroup, ...]

    @functools.cached_property
    def elements(  # type: ignore[override]
        self,
    ) -> tuple[tuple[typing.Any, ...], ...]:
        """Return all tuples of factor elements."""
        return tuple(
            itertools.product(*(factor.elements for factor in self.factors)),
        )

    @property
    def identity(self) -> tuple[typing.Any, ...]:
        """Return tuple of identities."""
        return tuple(factor.identity for factor in self.factors)

    def mul(
        self,
        first: tuple[typing.Any, ...],
        second: tuple[typing.Any, ...],
    ) -> tuple[typing.Any, ...]:
        """Multiply componentwise."""
        return tuple(
            factor.mul(left, right)
            for factor, left, right in zip(
                self.factors,
                first,
                second,
                strict=True,
            )
        )

    def inverse(
        self,
        element: tuple[typing.Any, ...],
    ) -> tuple[typing.Any, ...]:
        """Invert componentwise."""
        return tuple(
            factor.inverse(item)
            for factor, item in zip(self.factors, element, strict=True)
        )


@dataclasses.dataclass(frozen=True)
class Homomorphism:
    """Map of finite groups."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: Callable[[typing.Any], typing.Any] = dataclasses.field(
        compare=False,
    )

    def __call__(self, element: typing.Any) -> typing.Any:
        return self.mapping(element)

    def validate(self) -> None:
        """Check multiplication table compatibility.

        Raises:
            NotAHomomorphismError: on the first pair whose product is not
                respected or when an image lies outside of the target.

        """
        images = {element: self.mapping(element) for element in self.source}
        for element, image in images.items():
            if image not in self.target:
                raise exceptions.NotAHomomorphismError(
                    f"Image of {element!r} is not in target group",
                )
        for first, second in itertools.product(self.source, repeat=2):
            product = images[self.source.mul(first, second)]
            expected = self.target.mul(images[first], images[second])
            if product != expected:
                raise exceptions.NotAHomomorphismError(
                    f"f({first!r}*{second!r}) = {product!r}, "
                    f"but f({first!r})*f({second!r}) = {expected!r}",
                )

    @property
    def is_injective(self) -> bool:
        """Return True if only identity maps to identity."""
        identity = self.target.identity
        return sum(
            1 for element in self.source if self.mapping(element) == identity
        ) == 1

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Return composite, ``self`` applied first."""
        return Homomorphism(
            source=self.source,
            target=other.target,
            mapping=lambda element: other.mapping(self.mapping(element)),
        )

    @classmethod
    def identity_of(cls, group: FiniteGroup) -> "Homomorphism":
        """Return identity homomorphism of a group."""
        return cls(source=group, target=group, mapping=lambda element: element)


@dataclasses.dataclass(frozen=True)
class GSet:
    """Finite set with a right action of a finite group."""

    base: FinSet
    group: FiniteGroup
    action: Callable[[typing.Any, typing.Any], typing.Any] = dataclasses.field(
        compare=False,
        repr=False,
    )

    def act(
        self,
        element: typing.Any,
        group_element: typing.Any,
    ) -> typing.Any:
        """Return ``element`` acted on by ``group_element``."""
        return self.action(element, group_element)

    def __len__(self) -> int:
        return len(self.base)

    def __iter__(self) -> Iterator[typing.Any]:
        return iter(self.base)

    def __contains__(self, element: object) -> bool:
        return element in self.base

    def fixes(self, element: typing.Any, group_element: typing.Any) -> bool:
        """Return True if group element fixes the element."""
        return self.act(element, group_element) == element

    def validate(self) -> None:
        """Check action axioms.

        Raises:
            NotAnActionError: naming violated axiom and its instance.

        """
        identity = self.group.identity
        for element in self.base:
            if self.act(element, identity) != element:
                raise exceptions.NotAnActionError(
                    "identity",
                    (element, identity),
                )
            for first in self.group:
                image = self.act(element, first)
                if image not in self.base:
                    raise exceptions.NotAnActionError(
                        "closure",
                        (element, first),
                    )
                for second in self.group:
                    left = self.act(image, second)
                    right = self.act(element, self.group.mul(first, second))
                    if left != right:
                        raise exceptions.NotAnActionError(
                            "compatibility",
                            (element, first, second),
                        )

    @classmethod
    def trivial(cls, base: FinSet, group: FiniteGroup) -> "GSet":
        """Return set with trivial action."""
        return cls(base=base, group=group, action=lambda element, _: element)

    @classmethod
    def empty(cls, group: FiniteGroup) -> "GSet":
        """Return empty set over group."""
        return cls.trivial(FinSet.empty(), group)

    @classmethod
    def from_table(
        cls,
        base: FinSet,
        group: FiniteGroup,
        table: Mapping[typing.Any, Mapping[typing.Any, typing.Any]],
    ) -> "GSet":
        """Create set acted on by a table ``{group element: {x: x.g}}``.

        Missing group elements act trivially, so identity can be omitted.

        """
        frozen = {
            group_element: dict(images)
            for group_element, images in table.items()
        }

        def action(
            element: typing.Any,
            group_element: typing.Any,
        ) -> typing.Any:
            images = frozen.get(group_element)
            if images is None:
                return element
            return images[element]

        return cls(base=base, group=group, action=action)


def quotient_by_action(
    gset: GSet,
) -> tuple[FinSet, dict[typing.Any, typing.Any]]:
    """Return orbit representatives and projection onto them.

    Representative of an orbit is its minimal element.

    """
    projection: dict[typing.Any, typing.Any] = {}
    for element in gset.base:
        if element in projection:
            continue
        orbit = {
            gset.act(element, group_element) for group_element in gset.group
        }
        representative = utils.min_element(orbit)
        for member in orbit:
            projection[member] = representative
    return FinSet.of(set(projection.values())), projection


def induce(
    gset: GSet,
    homomorphism: Homomorphism,
    check: bool = True,
) -> GSet:
    """Return set induced along a group homomorphism ``f: H -> G``.

    Elements are classes of pairs ``(a, g)`` under
    ``(a.h, g) ~ (a, f(h) g)``, each class is represented by its minimal
    pair. ``G`` acts by right translation of the second coordinate.

    Raises:
        NotAHomomorphismError: when ``check`` is on and ``f`` does not
            respect products.

    """
    if check:
        homomorphism.validate()
    source, target = homomorphism.source, homomorphism.target
    images = {
        element: target.inverse(homomorphism(element)) for element in source
    }
    classes: dict[tuple[typing.Any, typing.Any], tuple[typing.Any, typing.Any]]
    classes = {}
    for element in gset.base:
        for group_element in target:
            if (element, group_element) in classes:
                continue
            members = {
                (
                    gset.act(element, h),
                    target.mul(images[h], group_element),
                )
                for h in source
            }
            representative = utils.min_element(members)
            for member in members:
                classes[member] = representative
    logger.debug(
        "Induced %s elements along map of groups of orders %s -> %s",
        len(set(classes.values())),
        source.order,
        target.order,
    )

    def action(
        pair: tuple[typing.Any, typing.Any],
        group_element: typing.Any,
    ) -> tuple[typing.Any, typing.Any]:
        element, coset = pair
        return classes[(element, target.mul(coset, group_element))]

    return GSet(
        base=FinSet.of(set(classes.values())),
        group=target,
        action=action,
    )


class UnionFind:
    """Disjoint sets keyed by hashable items."""

    def __init__(self) -> None:
        self.parents: dict[typing.Any, typing.Any] = {}

    def add(self, item: typing.Any) -> None:
        self.parents.setdefault(item, item)

    def find(self, item: typing.Any) -> typing.Any:
        root = item
        while self.parents[root] != root:
            root = self.parents[root]
        while self.parents[item] != root:
            self.parents[item], item = root, self.parents[item]
        return root

    def union(self, first: typing.Any, second: typing.Any) -> None:
        first_root, second_root = self.find(first), self.find(second)
        if first_root != second_root:
            self.parents[second_root] = first_root

    def classes(self) -> list[list[typing.Any]]:
        grouped: dict[typing.Any, list[typing.Any]] = {}
        for item in self.parents:
            grouped.setdefault(self.find(item), []).append(item)
        return list(grouped.values())


@dataclasses.dataclass(frozen=True)
class Pushout:
    """Pushout of a span with its two legs."""

    carrier: FinSet
    left: FinMap
    right: FinMap


LEFT_TAG = 0
RIGHT_TAG = 1


def pushout(first: FinMap, second: FinMap) -> Pushout:
    """Return pushout of ``B <- A -> C``.

    Elements of the pushout are the minimal tagged elements
    ``(0, b)``/``(1, c)`` of each class of ``B + C``.

    """
    if first.source != second.source:
        raise exceptions.OperadExtensionError(
            "Pushout legs must have common domain",
        )
    union_find = UnionFind()
    for element in first.target:
        union_find.add((LEFT_TAG, element))
    for element in second.target:
        union_find.add((RIGHT_TAG, element))
    for element in first.source:
        union_find.union(
            (LEFT_TAG, first(element)),
            (RIGHT_TAG, second(element)),
        )
    representatives = {}
    for members in union_find.classes():
        representative = utils.min_element(members)
        for member in members:
            representatives[member] = representative
    carrier = FinSet.of(set(representatives.values()))
    return Pushout(
        carrier=carrier,
        left=FinMap(
            source=first.target,
            target=carrier,
            mapping={
                element: representatives[(LEFT_TAG, element)]
                for element in first.target
            },
        ),
        right=FinMap(
            source=second.target,
            target=carrier,
            mapping={
                element: representatives[(RIGHT_TAG, element)]
                for element in second.target
            },
        ),
    )


def mediating_map(
    square: Pushout,
    left: FinMap,
    right: FinMap,
) -> FinMap:
    """Return the unique map out of a pushout compatible with a cocone.

    Raises:
        OperadExtensionError: if legs disagree on an element of the
            pushout, i.e. they do not form a cocone.

    """
    mapping: dict[typing.Any, typing.Any] = {}
    for leg, cocone_leg in ((square.left, left), (square.right, right)):
        for element in leg.source:
            image = cocone_leg(element)
            previous = mapping.setdefault(leg(element), image)
            if previous != image:
                raise exceptions.OperadExtensionError(
                    f"Legs disagree on {leg(element)!r}",
                )
    return FinMap(source=square.carrier, target=left.target, mapping=mapping)
