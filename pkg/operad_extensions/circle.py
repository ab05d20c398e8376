"""Circle product of symmetric sequences.

Element of ``(X o Y)(d; b)`` is a two level tree: an ``X`` vertex whose
inputs carry ``Y`` vertices, with leaves numbered by positions of ``b``.
Stored elements are tuples ``(c, x, reps, w, s)`` where

* ``c`` is the representative input profile of the ``X`` vertex and ``x``
  its decoration,
* ``reps[j]`` and ``w[j]`` are the representative profile and decoration of
  the ``Y`` vertex on input ``j``,
* ``s`` belongs to the stabilizer of ``b`` and numbers the leaves: the tree
  is the concatenated composite acted on by ``t(B)^-1 . s`` where ``B`` is
  the concatenation of ``reps``.

"""

import collections
import dataclasses
import functools
import itertools
import logging
import typing
from collections.abc import Callable, Iterator, Sequence

from . import exceptions, fincat, profiles, trees, utils
from .conf import settings
from .profiles import Color, ColorSet, Profile
from .results import BijectionWitness
from .symseq import Key, SymSeq

logger = logging.getLogger(__name__)

UNIT_ELEMENT = "id"

Decomposition = tuple[Profile, ...]
TagFunction = Callable[[SymSeq], str | None]


@dataclasses.dataclass(frozen=True)
class UnitSequence(SymSeq):
    """Unit of the circle product, one point at every ``(c; c)``."""


@dataclasses.dataclass(frozen=True)
class CircleProduct(SymSeq):
    """Symmetric sequence computed as ``left o right``."""

    left: SymSeq | None = None
    right: SymSeq | None = None


@dataclasses.dataclass(frozen=True)
class YPowerEntry:
    """Value of the tensor power ``Y^c`` at the orbit of ``b``.

    ``parts`` holds one set per decomposition of ``b``, induced from the
    product of stabilizers of its parts. ``value`` is their coproduct.

    """

    inputs: Profile
    target: profiles.ProfileOrbit
    parts: dict[Decomposition, fincat.GSet]
    value: fincat.GSet

    @property
    def decompositions(self) -> list[Decomposition]:
        """Return decompositions in enumeration order."""
        return list(self.parts)


def unit_symseq(colorset: ColorSet) -> UnitSequence:
    """Return unit sequence of a color set."""
    trivial = fincat.PermGroup.trivial(1)
    point = fincat.FinSet.singleton(UNIT_ELEMENT)
    return UnitSequence(
        colorset=colorset,
        table={
            (color, (color,)): fincat.GSet.trivial(point, trivial)
            for color in colorset
        },
    )


def decompositions(
    sequence: SymSeq,
    inputs: Profile,
    target: Profile,
) -> list[Decomposition]:
    """Return tuples of entry profiles of ``sequence`` splitting ``target``.

    Part ``j`` is a representative profile with a non empty entry at output
    ``inputs[j]`` and the parts together use the colors of ``target``.
    Tuples come in lexicographic order of entry keys.

    """
    grouped = sequence.by_output()
    result: list[Decomposition] = []

    def extend(prefix: list[Profile], remaining: collections.Counter) -> None:
        index = len(prefix)
        if index == len(inputs):
            if not any(remaining.values()):
                result.append(tuple(prefix))
            return
        for profile, _ in grouped.get(inputs[index], []):
            needed = collections.Counter(profile)
            if needed <= remaining:
                extend([*prefix, profile], remaining - needed)

    extend([], collections.Counter(target))
    return result


def _tensor(
    sequence: SymSeq,
    inputs: Profile,
    parts: Decomposition,
) -> fincat.GSet:
    factors = [
        sequence.get(output, part)
        for output, part in zip(inputs, parts, strict=True)
    ]
    group = fincat.ProductGroup(tuple(factor.group for factor in factors))

    def action(
        element: tuple[typing.Any, ...],
        group_element: tuple[utils.Permutation, ...],
    ) -> tuple[typing.Any, ...]:
        return tuple(
            factor.act(item, permutation)
            for factor, item, permutation in zip(
                factors,
                element,
                group_element,
                strict=True,
            )
        )

    return fincat.GSet(
        base=fincat.FinSet.of(
            itertools.product(*(factor.base.elements for factor in factors)),
        ),
        group=group,
        action=action,
    )


def _embedding(
    parts: Decomposition,
    group: fincat.FiniteGroup,
    target: fincat.PermGroup,
    colorset: ColorSet,
) -> fincat.Homomorphism:
    """Return block embedding conjugated into stabilizer of representative."""
    concatenated = tuple(itertools.chain.from_iterable(parts))
    transport = profiles.transport(concatenated, colorset)
    inverse = utils.inverse(transport)

    def mapping(element: tuple[utils.Permutation, ...]) -> utils.Permutation:
        return utils.compose(
            utils.compose(transport, profiles.block_sum(element)),
            inverse,
        )

    return fincat.Homomorphism(source=group, target=target, mapping=mapping)


def y_power_entry(
    sequence: SymSeq,
    inputs: Profile,
    target: profiles.ProfileOrbit,
) -> YPowerEntry:
    """Return tensor power of ``sequence`` along ``inputs`` at an orbit."""
    colorset = sequence.colorset
    stabilizer = target.stabilizer
    parts: dict[Decomposition, fincat.GSet] = {}
    for decomposition in decompositions(
        sequence,
        inputs,
        target.representative,
    ):
        tensor = _tensor(sequence, inputs, decomposition)
        parts[decomposition] = fincat.induce(
            tensor,
            _embedding(decomposition, tensor.group, stabilizer, colorset),
            check=False,
        )

    def action(
        element: tuple[Decomposition, tuple, utils.Permutation],
        group_element: utils.Permutation,
    ) -> tuple[Decomposition, tuple, utils.Permutation]:
        decomposition, tensor_element, coset = element
        moved, new_coset = parts[decomposition].act(
            (tensor_element, coset),
            group_element,
        )
        return decomposition, moved, new_coset

    value = fincat.GSet(
        base=fincat.FinSet.of(
            (decomposition, tensor_element, coset)
            for decomposition, induced in parts.items()
            for tensor_element, coset in induced
        ),
        group=stabilizer,
        action=action,
    )
    return YPowerEntry(
        inputs=inputs,
        target=target,
        parts=parts,
        value=value,
    )


def y_power(
    sequence: SymSeq,
    inputs: Profile,
    target: profiles.ProfileOrbit,
) -> fincat.GSet:
    """Return value of ``Y^inputs`` at orbit ``target``.

    With empty ``inputs`` the value is a point at the empty orbit and
    empty elsewhere.

    """
    return y_power_entry(sequence, inputs, target).value


def _reorder_bottoms(
    power: fincat.GSet,
    permutation: utils.Permutation,
    element: tuple[Decomposition, tuple, utils.Permutation],
    colorset: ColorSet,
) -> tuple[Decomposition, tuple, utils.Permutation]:
    """Act on a tensor power element by permuting its factors.

    Factor ``i`` of the result is factor ``permutation^-1[i]`` of the
    source, leaf numbering is kept.

    """
    decomposition, tensor_element, coset = element
    inverse = utils.inverse(permutation)
    moved = utils.permute(decomposition, inverse)
    block = profiles.block_permutation(
        permutation,
        [len(part) for part in moved],
    )
    source = profiles.transport(
        tuple(itertools.chain.from_iterable(decomposition)),
        colorset,
    )
    target = profiles.transport(
        tuple(itertools.chain.from_iterable(moved)),
        colorset,
    )
    new_coset = utils.compose(
        utils.compose(utils.compose(target, block), utils.inverse(source)),
        coset,
    )
    return power.act(
        (moved, utils.permute(tensor_element, inverse), new_coset),
        power.group.identity,
    )


def _reachable_keys(
    left: SymSeq,
    right: SymSeq,
    arity_bound: int | None,
) -> list[Key]:
    colorset = left.colorset
    grouped = right.by_output()
    keys: set[Key] = set()
    for output, inputs in left.keys():
        choices = [
            [profile for profile, _ in grouped.get(color, [])]
            for color in inputs
        ]
        for parts in itertools.product(*choices):
            target = colorset.representative(
                tuple(itertools.chain.from_iterable(parts)),
            )
            if arity_bound is None or len(target) <= arity_bound:
                keys.add((output, target))
    return sorted(keys, key=left.key_order)


def _circle_entry(
    left: SymSeq,
    right: SymSeq,
    output: Color,
    target: Profile,
) -> fincat.GSet:
    colorset = left.colorset
    orbit = profiles.orbit_of(target, colorset)
    classes: dict[tuple, tuple] = {}
    powers: dict[Profile, fincat.GSet] = {}
    for inputs, tops in left.by_output().get(output, []):
        power = y_power(right, inputs, orbit)
        powers[inputs] = power
        for top in tops:
            for bottoms in power:
                if (inputs, top, *bottoms) in classes:
                    continue
                members = {
                    (
                        inputs,
                        tops.act(top, permutation),
                        *_reorder_bottoms(
                            power,
                            utils.inverse(permutation),
                            bottoms,
                            colorset,
                        ),
                    )
                    for permutation in tops.group
                }
                representative = utils.min_element(members)
                for member in members:
                    classes[member] = representative

    def action(element: tuple, group_element: utils.Permutation) -> tuple:
        inputs, top, *bottoms = element
        moved = powers[inputs].act(tuple(bottoms), group_element)
        return classes[(inputs, top, *moved)]

    return fincat.GSet(
        base=fincat.FinSet.of(set(classes.values())),
        group=orbit.stabilizer,
        action=action,
    )


def circle(
    left: SymSeq,
    right: SymSeq,
    arity_bound: int | None = None,
) -> CircleProduct:
    """Return circle product ``left o right``.

    Only entries reachable from non empty entries are computed, optionally
    up to an arity bound.

    Raises:
        ColorMismatchError: if sequences use different color sets.

    """
    if left.colorset != right.colorset:
        raise exceptions.ColorMismatchError(
            "Circle product needs sequences over the same colors",
        )
    table = {}
    for output, target in _reachable_keys(left, right, arity_bound):
        entry = _circle_entry(left, right, output, target)
        logger.debug(
            "Circle product entry (%s;%s) has %s elements",
            output,
            ",".join(target),
            len(entry),
        )
        if len(entry):
            table[(output, target)] = entry
    return CircleProduct(
        colorset=left.colorset,
        table=table,
        left=left,
        right=right,
    )


def default_tag(sequence: SymSeq) -> str | None:
    """Return vertex tag of a sequence, units are not drawn as vertices."""
    return None if isinstance(sequence, UnitSequence) else "S"


def flatten(
    sequence: SymSeq,
    key: Key,
    element: typing.Any,
    tag: TagFunction = default_tag,
) -> trees.LabeledNode:
    """Return labeled tree drawn by an element.

    Leaves are labeled by positions of the representative profile of
    ``key``. Elements of circle products are unfolded recursively, elements
    of unit sequences become bare leaves.

    """
    output, inputs = key
    if isinstance(sequence, CircleProduct) and sequence.left is not None:
        assert sequence.right is not None  # noqa: S101
        top_inputs, top, decomposition, tensor_element, coset = element
        top_tree = flatten(sequence.left, (output, top_inputs), top, tag)
        bottoms = [
            flatten(sequence.right, (color, part), item, tag)
            for color, part, item in zip(
                top_inputs,
                decomposition,
                tensor_element,
                strict=True,
            )
        ]
        concatenated = tuple(itertools.chain.from_iterable(decomposition))
        numbering = utils.compose(
            utils.inverse(profiles.transport(concatenated, sequence.colorset)),
            coset,
        )
        relabel = utils.inverse(numbering)
        return trees.map_leaves(
            trees.graft_labeled(top_tree, bottoms),
            lambda leaf: trees.LabeledLeaf(leaf.color, relabel[leaf.label]),
        )
    vertex_tag = tag(sequence)
    if vertex_tag is None:
        if len(inputs) != 1 or inputs[0] != output:
            raise exceptions.OperadExtensionError(
                f"Only unary identity entries can be drawn as edges, "
                f"got ({output};{','.join(inputs)})",
            )
        return trees.LabeledLeaf(output, 0)
    return trees.DecoratedVertex(
        tag=vertex_tag,
        output=output,
        element=element,
        children=tuple(
            trees.LabeledLeaf(color, position)
            for position, color in enumerate(inputs)
        ),
        entry=sequence.get(output, inputs),
    )


def to_labeled_tree(
    sequence: SymSeq,
    key: Key,
    element: typing.Any,
    tag: TagFunction = default_tag,
) -> trees.LabeledTree:
    """Return canonical labeled tree of an element."""
    return trees.LabeledTree.canonical(flatten(sequence, key, element, tag))


def two_level_count(left: SymSeq, right: SymSeq, key: Key) -> int:
    """Count two level trees at an entry by direct enumeration.

    Every top decoration, choice of bottom decorations and color
    preserving leaf numbering is drawn and isomorphic trees are merged.
    It doesn't use inductions or quotients, so it checks `circle`.

    """
    output, target = key
    codes: set[str] = set()
    for inputs, tops in left.by_output().get(output, []):
        for decomposition in decompositions(right, inputs, target):
            concatenated = tuple(itertools.chain.from_iterable(decomposition))
            numberings = [
                permutation
                for permutation in utils.all_permutations(len(target))
                if utils.permute(concatenated, permutation) == target
            ]
            entries = [
                right.get(color, part)
                for color, part in zip(inputs, decomposition, strict=True)
            ]
            for top in tops:
                top_tree = flatten(left, (output, inputs), top)
                for choice in itertools.product(*entries):
                    bottoms = [
                        flatten(right, (color, part), item)
                        for color, part, item in zip(
                            inputs,
                            decomposition,
                            choice,
                            strict=True,
                        )
                    ]
                    grafted = trees.graft_labeled(top_tree, bottoms)
                    for numbering in numberings:
                        relabel = utils.inverse(numbering)
                        codes.add(
                            trees.labeled_code(
                                trees.map_leaves(
                                    grafted,
                                    functools.partial(_relabel_leaf, relabel),
                                ),
                            ),
                        )
    logger.debug("Two level trees at %s: %s", key, len(codes))
    return len(codes)


def _relabel_leaf(
    relabel: utils.Permutation,
    leaf: trees.LabeledLeaf,
) -> trees.LabeledLeaf:
    return trees.LabeledLeaf(leaf.color, relabel[leaf.label])


def _check_cap(key: Key, size: int, cap: int) -> None:
    if size > cap:
        raise exceptions.EntrySizeCapExceeded(key, size, cap)


def match_entries(
    first: SymSeq,
    second: SymSeq,
    first_tag: TagFunction,
    second_tag: TagFunction,
    cap: int | None = None,
) -> BijectionWitness:
    """Match entries of two sequences through their labeled trees.

    Elements drawing isomorphic trees are paired. The pairing is checked to
    be a bijection commuting with stabilizer actions.

    Raises:
        EntrySizeCapExceeded: if an entry is larger than ``cap``.

    """
    cap = settings.entry_size_cap if cap is None else cap
    bijections: dict[Key, dict[typing.Any, typing.Any]] = {}
    keys = sorted(
        set(first.table) | set(second.table),
        key=first.key_order,
    )
    for key in keys:
        source, target = first.get(*key), second.get(*key)
        _check_cap(key, len(source), cap)
        _check_cap(key, len(target), cap)
        by_code = {
            to_labeled_tree(second, key, element, second_tag).code: element
            for element in target
        }
        bijection = {}
        for element in source:
            code = to_labeled_tree(first, key, element, first_tag).code
            if code not in by_code:
                return BijectionWitness(bijections, counterexample=key)
            bijection[element] = by_code[code]
        if len(source) != len(target) or set(bijection.values()) != set(
            target,
        ):
            return BijectionWitness(bijections, counterexample=key)
        for element, image in bijection.items():
            for group_element in source.group:
                moved = bijection[source.act(element, group_element)]
                if moved != target.act(image, group_element):
                    return BijectionWitness(bijections, counterexample=key)
        bijections[key] = bijection
    return BijectionWitness(bijections)


def _bound_entries(sequence: SymSeq, bound: int) -> SymSeq:
    return SymSeq(
        colorset=sequence.colorset,
        table={
            key: gset
            for key, gset in sequence.table.items()
            if len(key[1]) <= bound
        },
    )


def _tagger(named: Sequence[tuple[SymSeq, str]]) -> TagFunction:
    def tag(sequence: SymSeq) -> str | None:
        if isinstance(sequence, UnitSequence):
            return None
        for candidate, name in named:
            if candidate is sequence:
                return name
        return "S"

    return tag


def witness_associativity(
    first: SymSeq,
    second: SymSeq,
    third: SymSeq,
    bound: int,
    cap: int | None = None,
) -> BijectionWitness:
    """Return bijections ``(X o Y) o Z = X o (Y o Z)`` up to arity bound."""
    first, second, third = (
        _bound_entries(sequence, bound) for sequence in (first, second, third)
    )
    tag = _tagger(((first, "X"), (second, "Y"), (third, "Z")))
    left_nested = circle(circle(first, second), third, arity_bound=bound)
    right_nested = circle(first, circle(second, third), arity_bound=bound)
    witness = match_entries(left_nested, right_nested, tag, tag, cap)
    if not witness:
        logger.warning(
            "Associativity bijection fails at %s",
            witness.counterexample,
        )
    return witness


def witness_left_unit(
    sequence: SymSeq,
    cap: int | None = None,
) -> BijectionWitness:
    """Return bijections ``I o X = X``."""
    tag = _tagger(((sequence, "X"),))
    product = circle(unit_symseq(sequence.colorset), sequence)
    return match_entries(product, sequence, tag, tag, cap)


def witness_right_unit(
    sequence: SymSeq,
    cap: int | None = None,
) -> BijectionWitness:
    """Return bijections ``X o I = X``."""
    tag = _tagger(((sequence, "X"),))
    product = circle(sequence, unit_symseq(sequence.colorset))
    return match_entries(product, sequence, tag, tag, cap)


def is_concentrated_in_arity_zero(sequence: SymSeq) -> bool:
    """Return True if all non empty entries have no inputs."""
    return all(not inputs for _, inputs in sequence.table)


def entries_of(sequence: SymSeq) -> Iterator[tuple[Key, int]]:
    """Iterate over entry keys with their sizes."""
    for key, gset in sequence.items():
        yield key, len(gset)
