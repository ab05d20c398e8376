"""Free operads on finite symmetric sequences.

Elements are labeled decorated trees in canonical form: every vertex is
decorated by a generator, leaves are labeled by positions of the
representative input profile and the unit is the bare edge.

"""

import dataclasses
import functools
import itertools
import logging
import typing
from collections.abc import Callable, Iterable, Iterator, Sequence

from .. import fincat, profiles, trees
from ..conf import settings
from ..profiles import Color, ColorSet, IOPair, Profile
from ..symseq import Key, SymSeq
from .core import Bottom, Operad

logger = logging.getLogger(__name__)

GENERATOR_TAG = "X"

Shape = tuple[trees.LabeledNode, int, int]


@dataclasses.dataclass(frozen=True)
class FreeEntry:
    """Entry of a free operad computed under a vertex bound.

    ``complete`` is True when no tree with more vertices can land in the
    entry.

    """

    elements: fincat.FinSet
    complete: bool

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[trees.LabeledTree]:
        return iter(self.elements)


def _leaf_relabelings(
    leaves: Sequence[trees.LabeledLeaf],
    representative: Profile,
) -> Iterable[tuple[int, ...]]:
    """Iterate over color preserving numberings of planar leaves."""
    positions: dict[Color, list[int]] = {}
    for position, color in enumerate(representative):
        positions.setdefault(color, []).append(position)
    slots: dict[Color, list[int]] = {}
    for index, leaf in enumerate(leaves):
        slots.setdefault(leaf.color, []).append(index)
    if sorted(slots) != sorted(positions) or any(
        len(slots[color]) != len(positions[color]) for color in slots
    ):
        return
    colors = list(slots)
    for choice in itertools.product(
        *(itertools.permutations(positions[color]) for color in colors),
    ):
        labels = [0] * len(leaves)
        for color, images in zip(colors, choice, strict=True):
            for index, image in zip(slots[color], images, strict=True):
                labels[index] = image
        yield tuple(labels)


def _label_leaves(
    node: trees.LabeledNode,
    labels: Sequence[int],
) -> trees.LabeledNode:
    counter = itertools.count()
    return trees.map_leaves(
        node,
        lambda leaf: trees.LabeledLeaf(leaf.color, labels[next(counter)]),
    )


@dataclasses.dataclass(frozen=True, eq=False)
class FreeOperad(Operad):
    """Free operad generated by a symmetric sequence.

    Entries are enumerated lazily up to ``vertex_bound`` vertices and
    memoized, composition grafts trees without bound.

    """

    generators: SymSeq
    vertex_bound: int = dataclasses.field(
        default_factory=lambda: settings.max_vertices,
    )
    tag: str = GENERATOR_TAG

    @property
    def colorset(self) -> ColorSet:  # type: ignore[override]
        """Return colors of generators."""
        return self.generators.colorset

    @functools.cached_property
    def _shapes(self) -> Callable[[Color, int, int], tuple[Shape, ...]]:
        generators = self.generators.by_output()

        @functools.cache
        def shapes(
            color: Color,
            vertices: int,
            leaves: int,
        ) -> tuple[Shape, ...]:
            """Return planar trees with unlabeled leaves within budgets."""
            found: dict[str, Shape] = {}
            if leaves >= 1:
                leaf = trees.LabeledLeaf(color, 0)
                found[trees.labeled_code(leaf)] = (leaf, 0, 1)
            if vertices < 1:
                return tuple(found.values())
            for representative, entry in generators.get(color, []):
                for children in fill(representative, vertices - 1, leaves):
                    nodes = tuple(child for child, _, _ in children)
                    used = 1 + sum(count for _, count, _ in children)
                    width = sum(count for _, _, count in children)
                    for element in entry:
                        vertex = trees.DecoratedVertex(
                            tag=self.tag,
                            output=color,
                            element=element,
                            children=nodes,
                            entry=entry,
                        )
                        found.setdefault(
                            trees.labeled_code(vertex),
                            (trees.canonicalize(vertex), used, width),
                        )
            return tuple(found.values())

        @functools.cache
        def fill(
            colors: Profile,
            vertices: int,
            leaves: int,
        ) -> tuple[tuple[Shape, ...], ...]:
            if not colors:
                return ((),)
            result = []
            for head in shapes(colors[0], vertices, leaves):
                _, used, width = head
                for tail in fill(colors[1:], vertices - used, leaves - width):
                    result.append((head, *tail))
            return tuple(result)

        return shapes

    def enumerate(self, output: Color, representative: Profile) -> FreeEntry:
        """Return trees at an entry with at most ``vertex_bound`` vertices."""
        return self._enumerate(output, tuple(representative))

    @functools.cache  # noqa: B019
    def _enumerate(self, output: Color, representative: Profile) -> FreeEntry:
        found: dict[str, trees.LabeledTree] = {}
        arity = len(representative)
        for node, _, width in self._shapes(output, self.vertex_bound, arity):
            if width != arity:
                continue
            leaves = trees.labeled_leaves(node)
            for labels in _leaf_relabelings(leaves, representative):
                tree = trees.LabeledTree.canonical(_label_leaves(node, labels))
                found.setdefault(tree.code, tree)
        arities = [len(inputs) for _, inputs in self.generators.table]
        complete = not arities or (
            min(arities) >= 2 and self.vertex_bound >= max(arity - 1, 1)
        )
        if not complete:
            logger.debug(
                "Entry (%s;%s) of free operad is cut at %s vertices",
                output,
                ",".join(representative),
                self.vertex_bound,
            )
        return FreeEntry(
            elements=fincat.FinSet.of(found.values()),
            complete=complete,
        )

    def entry(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return entry acted on by relabeling leaves."""
        return fincat.GSet(
            base=self.enumerate(output, representative).elements,
            group=fincat.PermGroup.stabilizer(tuple(representative)),
            action=lambda tree, permutation: tree.act(permutation),
        )

    def unit_element(self, color: Color) -> trees.LabeledTree:
        """Return the edge."""
        return trees.LabeledTree(trees.LabeledLeaf(color, 0))

    def compose_representatives(
        self,
        output: Color,
        representative: Profile,
        element: trees.LabeledTree,
        bottoms: Sequence[Bottom],
    ) -> trees.LabeledTree:
        """Graft trees and renumber leaves from the concatenated profile."""
        grafted = trees.graft_labeled(
            element.root,
            [bottom.root for _, bottom in bottoms],
        )
        concatenated = tuple(
            itertools.chain.from_iterable(profile for profile, _ in bottoms),
        )
        return trees.LabeledTree(grafted).relabel(
            profiles.transport(concatenated, self.colorset),
        )

    def keys(self, arity_bound: int) -> list[Key]:
        """Return keys of non empty entries up to arity bound."""
        return [
            (output, representative)
            for representative in self.colorset.representatives(arity_bound)
            for output in self.colorset
            if len(self.enumerate(output, representative))
        ]

    def generator(self, key: Key, element: typing.Any) -> trees.LabeledTree:
        """Return corolla of a generator."""
        output, representative = key
        return trees.LabeledTree.canonical(
            trees.DecoratedVertex(
                tag=self.tag,
                output=output,
                element=element,
                children=tuple(
                    trees.LabeledLeaf(color, position)
                    for position, color in enumerate(representative)
                ),
                entry=self.generators.get(output, representative),
            ),
        )


def free_operad(
    generators: SymSeq,
    entry: IOPair,
    vertex_bound: int | None = None,
) -> FreeEntry:
    """Return entry of the free operad up to a vertex bound."""
    if vertex_bound is None:
        vertex_bound = settings.max_vertices
    operad = FreeOperad(generators=generators, vertex_bound=vertex_bound)
    colorset = generators.colorset
    entry = entry.validate(colorset).representative(colorset)
    return operad.enumerate(entry.output, entry.inputs)


def opc_generators(
    colorset: ColorSet,
    vertex_profiles: Sequence[IOPair],
) -> SymSeq:
    """Return one generator ``("v", j)`` per vertex profile.

    Generators are acted on trivially.

    """
    grouped: dict[Key, list[tuple[str, int]]] = {}
    for index, pair in enumerate(vertex_profiles):
        pair = pair.validate(colorset).representative(colorset)
        grouped.setdefault((pair.output, pair.inputs), []).append(("v", index))
    return SymSeq.build(
        colorset,
        {
            key: fincat.GSet.trivial(
                fincat.FinSet.of(elements),
                fincat.PermGroup.stabilizer(key[1]),
            )
            for key, elements in grouped.items()
        },
    )


def opc_entry(
    vertex_profiles: Sequence[IOPair],
    target: IOPair,
    colorset: ColorSet,
) -> fincat.FinSet:
    """Return entry of the operad of colored operads.

    Elements are classes of trees with overall profile ``target`` whose
    vertices match ``vertex_profiles`` one to one.

    """
    operad = FreeOperad(
        generators=opc_generators(colorset, vertex_profiles),
        vertex_bound=len(vertex_profiles),
        tag="v",
    )
    target = target.validate(colorset).representative(colorset)
    expected = sorted(("v", index) for index in range(len(vertex_profiles)))
    return fincat.FinSet.of(
        tree
        for tree in operad.enumerate(target.output, target.inputs)
        if sorted(vertex.element for vertex in tree.vertices()) == expected
    )
