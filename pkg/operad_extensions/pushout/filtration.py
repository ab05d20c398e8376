"""Free extensions of operads by cells and their filtration.

An attachment is a span ``Free(X) <- Free(Y)`` given by an injection
``i: X -> Y`` of generators sitting at one profile ``s`` together with
``f: X -> A(s)``. The pushout ``A[Y]`` is computed stagewise: stage ``k``
adds classes of reduced trees with ``k`` distinguished vertices whose
normal vertices carry elements of ``A`` and whose distinguished vertices
carry generators. Classes with some generator from ``X`` are glued onto
the previous stage through reduction.

Generators live at ``s`` as a plain set: a distinguished vertex is
decorated by a pair ``(y, o)`` of a generator and an orientation ``o``
with ``s . o`` being the representative of ``s``.

"""

import dataclasses
import functools
import itertools
import logging
import typing
from collections.abc import Iterable, Mapping, Sequence

from .. import exceptions, fincat, profiles, trees, utils
from ..conf import settings
from ..operads import Operad, Operation
from ..operads.core import Bottom
from ..profiles import Color, ColorSet, IOPair, Profile
from ..symseq import Key, transport_act
from .qconstruction import QConstruction

logger = logging.getLogger(__name__)

NORMAL_TAG = "A"
GENERATOR_TAG = "Y"

Decoration = tuple[typing.Any, utils.Permutation]


@dataclasses.dataclass(frozen=True, eq=False)
class AttachmentData:
    """Cell attached to an operad.

    ``inclusion`` is ``i: X -> Y``, ``attaching`` sends every ``x`` to
    the label of an element of the ambient operad at ``source`` (label
    of the representative entry transported to ``source.inputs``).

    """

    ambient: Operad
    source: IOPair
    inclusion: fincat.FinMap
    attaching: Mapping[typing.Any, typing.Any]

    @property
    def colorset(self) -> ColorSet:
        """Return colors of the ambient operad."""
        return self.ambient.colorset

    @property
    def generators(self) -> fincat.FinSet:
        """Return ``Y``."""
        return self.inclusion.target

    def validate(self) -> "AttachmentData":
        """Check attachment data.

        Raises:
            UndeclaredColorError: if the source uses unknown colors.
            NonInjectiveAttachmentError: if ``i`` is not injective.
            OperadExtensionError: if ``f`` is not defined on ``X`` or
                misses the ambient entry.

        """
        self.source.validate(self.colorset)
        self.inclusion.validate()
        if not self.inclusion.is_injective:
            raise exceptions.NonInjectiveAttachmentError(
                "Generators map X -> Y must be injective",
            )
        if set(self.attaching) != set(self.inclusion.source):
            raise exceptions.OperadExtensionError(
                "Attaching map must be defined exactly on X",
            )
        entry = self.ambient.entry_at(self.source.output, self.source.inputs)
        for generator, element in self.attaching.items():
            if element not in entry:
                raise exceptions.OperadExtensionError(
                    f"Attaching map sends {generator!r} to {element!r}, "
                    f"which is not in entry {self.source}",
                )
        return self

    @functools.cached_property
    def preimages(self) -> dict[typing.Any, typing.Any]:
        """Return ``i`` inverted on its image."""
        return {
            self.inclusion(generator): generator
            for generator in self.inclusion.source
        }

    def is_attached(self, generator: typing.Any) -> bool:
        """Return True if generator comes from ``X``."""
        return generator in self.preimages

    @functools.cached_property
    def representative(self) -> Profile:
        """Return representative of ``source.inputs``."""
        return self.colorset.representative(self.source.inputs)

    @functools.cached_property
    def orientations(self) -> tuple[utils.Permutation, ...]:
        """Return permutations sorting ``source.inputs``."""
        return tuple(
            permutation
            for permutation in utils.all_permutations(self.source.arity)
            if utils.permute(self.source.inputs, permutation)
            == self.representative
        )

    @functools.cached_property
    def generator_entry(self) -> fincat.GSet:
        """Return decorations of distinguished vertices."""
        return fincat.GSet(
            base=fincat.FinSet.of(
                itertools.product(self.generators.elements, self.orientations),
            ),
            group=fincat.PermGroup.stabilizer(self.representative),
            action=lambda decoration, permutation: (
                decoration[0],
                utils.compose(decoration[1], permutation),
            ),
        )

    def attached_element(self, decoration: Decoration) -> typing.Any:
        """Return ambient label of ``f(x) . o`` for ``(i(x), o)``."""
        generator, orientation = decoration
        operation = Operation(
            self.source.output,
            self.source.inputs,
            self.attaching[self.preimages[generator]],
        )
        return self.ambient.act(operation, orientation).element

    @functools.cached_property
    def quotients(self) -> QConstruction:
        """Return Q objects of ``i``."""
        return QConstruction(self.inclusion)


def attachment(
    ambient: Operad,
    source: IOPair,
    attaching: Mapping[typing.Any, typing.Any],
    free: Iterable[typing.Any] = (),
) -> AttachmentData:
    """Return attachment with ``X`` included in ``Y = X + free``."""
    attached = fincat.FinSet.of(attaching)
    return AttachmentData(
        ambient=ambient,
        source=source,
        inclusion=fincat.FinMap(
            source=attached,
            target=fincat.FinSet.of([*attached, *free]),
            mapping={generator: generator for generator in attached},
        ),
        attaching=dict(attaching),
    ).validate()


def _is_normal(node: trees.LabeledNode) -> bool:
    return isinstance(node, trees.DecoratedVertex) and node.tag == NORMAL_TAG


class Reducer:
    """Normal forms of trees decorated by an attachment.

    A tree is normal when its root is a normal vertex, no two normal
    vertices are adjacent and every child of a distinguished vertex is
    normal. Distinguished vertices with generators from ``X`` are
    replaced by the attached elements, adjacent normal vertices are
    composed in the ambient operad and unit vertices are inserted where
    a normal vertex is missing.

    """

    def __init__(self, data: AttachmentData) -> None:
        self.data = data
        self.ambient = data.ambient
        self.colorset = data.colorset

    def normal_vertex(
        self,
        operation: Operation,
        children: Sequence[trees.LabeledNode],
    ) -> trees.DecoratedVertex:
        """Return normal vertex with children in planar order."""
        return trees.decorated_vertex(
            tag=NORMAL_TAG,
            output=operation.output,
            profile=operation.inputs,
            element=operation.element,
            children=children,
            entry=self.ambient.entry_at(operation.output, operation.inputs),
            colorset=self.colorset,
        )

    def unit_vertex(self, child: trees.LabeledNode) -> trees.DecoratedVertex:
        """Return unit vertex above a node."""
        return self.normal_vertex(self.ambient.unit(child.color), (child,))

    def _contract(
        self,
        vertex: trees.DecoratedVertex,
    ) -> trees.DecoratedVertex:
        if not any(map(_is_normal, vertex.children)):
            return vertex
        bottoms = []
        planar: list[trees.LabeledNode] = []
        for child in vertex.children:
            if _is_normal(child):
                bottoms.append(
                    Operation(child.output, child.profile, child.element),
                )
                planar.extend(child.children)
            else:
                bottoms.append(self.ambient.unit(child.color))
                planar.append(child)
        composite = self.ambient.gamma(
            Operation(vertex.output, vertex.profile, vertex.element),
            bottoms,
        )
        return self.normal_vertex(composite, planar)

    def reduce_node(self, node: trees.LabeledNode) -> trees.LabeledNode:
        """Return normal form of a subtree, its root may stay distinguished."""
        if isinstance(node, trees.LabeledLeaf):
            return node
        children = tuple(self.reduce_node(child) for child in node.children)
        if node.tag == GENERATOR_TAG and self.data.is_attached(
            node.element[0],
        ):
            return self._contract(
                trees.DecoratedVertex(
                    tag=NORMAL_TAG,
                    output=node.output,
                    element=self.data.attached_element(node.element),
                    children=children,
                    entry=self.ambient.entry(node.output, node.profile),
                ),
            )
        if node.tag == NORMAL_TAG:
            return self._contract(dataclasses.replace(node, children=children))
        return dataclasses.replace(
            node,
            children=tuple(
                child if _is_normal(child) else self.unit_vertex(child)
                for child in children
            ),
        )

    def reduce(self, tree: trees.LabeledTree) -> trees.LabeledTree:
        """Return normal form of a tree."""
        root = self.reduce_node(tree.root)
        if not _is_normal(root):
            root = self.unit_vertex(root)
        return trees.LabeledTree.canonical(root)

    def corolla(self, operation: Operation) -> trees.LabeledTree:
        """Return element of stage zero for an ambient operation."""
        return trees.LabeledTree.canonical(
            self.normal_vertex(
                operation,
                [
                    trees.LabeledLeaf(color, position)
                    for position, color in enumerate(operation.inputs)
                ],
            ),
        )


@dataclasses.dataclass(frozen=True)
class TreeContribution:
    """What one reduced tree adds to a stage."""

    tree: trees.MarkedTree
    automorphisms: int
    decorations: int
    attached: int
    added: int

    @property
    def code(self) -> str:
        """Return canonical encoding of the tree."""
        return str(self.tree)


@dataclasses.dataclass(frozen=True)
class FiltrationStage:
    """Stage ``A_k`` of the filtration at one entry.

    ``inclusion`` is the injection ``h_k: A_(k-1) -> A_k``, absent for
    stage zero. ``exhausted`` marks stages cut by the vertex bound,
    ``final`` marks stages after which nothing can be added.

    """

    index: int
    target: IOPair
    elements: fincat.GSet
    inclusion: fincat.FinMap | None
    contributions: tuple[TreeContribution, ...] = ()
    exhausted: bool = False
    final: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def added(self) -> int:
        """Return number of elements new at this stage."""
        if self.inclusion is None:
            return len(self.elements)
        return len(self.elements) - len(self.inclusion.source)


class _Shape:
    """Reduced tree with its decorations acted on by automorphisms."""

    def __init__(
        self,
        tree: trees.MarkedTree,
        data: AttachmentData,
        target: Profile,
    ) -> None:
        self.tree = tree
        self.data = data
        self.colorset = data.colorset
        self.aut = trees.automorphism_group(tree)
        nodes = tree.nodes()
        self.vertices = tuple(
            index
            for index, node in enumerate(nodes)
            if isinstance(node, trees.Vertex)
        )
        self.positions = {
            index: position for position, index in enumerate(self.vertices)
        }
        self.nodes = tuple(nodes[index] for index in self.vertices)
        self.entries = tuple(
            data.generator_entry
            if node.distinguished
            else data.ambient.entry_at(node.color, node.profile)
            for node in self.nodes
        )
        self.distinguished = tuple(
            position
            for position, node in enumerate(self.nodes)
            if node.distinguished
        )
        self.transport = profiles.transport(tree.profile, self.colorset)
        self.target = target

    def push(
        self,
        automorphism: utils.Permutation,
        decorations: tuple[typing.Any, ...],
    ) -> tuple[typing.Any, ...]:
        """Return decorations carried along an automorphism."""
        result: list[typing.Any] = [None] * len(decorations)
        for position, index in enumerate(self.vertices):
            local = self.aut.local_permutation(automorphism, index)
            _, label = transport_act(
                self.entries[position],
                self.nodes[position].profile,
                decorations[position],
                utils.inverse(local),
                self.colorset,
            )
            result[self.positions[automorphism[index]]] = label
        return tuple(result)

    def decorations(self) -> fincat.GSet:
        """Return all decorations acted on by automorphisms from the right."""
        return fincat.GSet(
            base=fincat.FinSet.of(
                itertools.product(
                    *(entry.base.elements for entry in self.entries),
                ),
            ),
            group=self.aut.group,
            action=lambda decorations, automorphism: self.push(
                utils.inverse(automorphism),
                decorations,
            ),
        )

    def conjugation(self) -> fincat.Homomorphism:
        """Return leaf action moved into the stabilizer of the target."""
        inverse = utils.inverse(self.transport)
        return fincat.Homomorphism(
            source=self.aut.group,
            target=fincat.PermGroup.stabilizer(self.target),
            mapping=lambda automorphism: utils.compose(
                utils.compose(
                    self.transport,
                    self.aut.leaf_action(automorphism),
                ),
                inverse,
            ),
        )

    def generators(
        self,
        decorations: tuple[typing.Any, ...],
    ) -> tuple[typing.Any, ...]:
        """Return generators on distinguished vertices in preorder."""
        return tuple(
            decorations[position][0] for position in self.distinguished
        )

    def realize(
        self,
        element: tuple[tuple[typing.Any, ...], utils.Permutation],
    ) -> trees.LabeledTree:
        """Return labeled tree of an induced element ``(z, s)``.

        Leaves in planar position ``p`` get label ``g^-1[p]`` for
        ``g = t^-1 s`` with ``t`` the transport of the planar profile.

        """
        decorations, coset = element
        labels = utils.inverse(
            utils.compose(utils.inverse(self.transport), coset),
        )
        vertex_labels = iter(decorations)
        entries = iter(self.entries)
        leaf_positions = itertools.count()

        def build(node: trees.Node) -> trees.LabeledNode:
            if isinstance(node, trees.Leaf):
                label = labels[next(leaf_positions)]
                return trees.LabeledLeaf(node.color, label)
            decoration, entry = next(vertex_labels), next(entries)
            children = [build(child) for child in node.children]
            return trees.decorated_vertex(
                tag=GENERATOR_TAG if node.distinguished else NORMAL_TAG,
                output=node.color,
                profile=node.profile,
                element=decoration,
                children=children,
                entry=entry,
                colorset=self.colorset,
            )

        return trees.LabeledTree.canonical(build(self.tree.root))


def _stage_gset(
    elements: Iterable[trees.LabeledTree],
    target: IOPair,
) -> fincat.GSet:
    return fincat.GSet(
        base=fincat.FinSet.of(elements),
        group=fincat.PermGroup.stabilizer(target.inputs),
        action=lambda tree, permutation: tree.act(permutation),
    )


def is_final(data: AttachmentData, support: Iterable[IOPair]) -> bool:
    """Return True if no reduced tree with a distinguished vertex exists.

    Either no normal vertex takes an input of the output color of the
    cell, or some input color of the cell is output by no normal vertex.

    """
    support = list(support)
    consumed = {color for pair in support for color in pair.inputs}
    produced = {pair.output for pair in support}
    return (
        data.source.output not in consumed
        or not set(data.source.inputs) <= produced
    )


class Filtration:
    """Stages of the free extension at one entry."""

    def __init__(
        self,
        data: AttachmentData,
        target: IOPair,
        vertex_bound: int | None = None,
    ) -> None:
        self.data = data
        self.colorset = data.colorset
        self.target = target.validate(self.colorset).representative(
            self.colorset,
        )
        self.vertex_bound = (
            settings.max_vertices if vertex_bound is None else vertex_bound
        )
        self.reducer = Reducer(data)
        self.support = data.ambient.support(
            self.target.arity + self.vertex_bound,
        )
        self.final = is_final(data, self.support)
        self.stages: list[FiltrationStage] = []

    def stage(self, index: int) -> FiltrationStage:
        """Return stage, computing missing stages first."""
        while len(self.stages) <= index:
            if not self.stages:
                self.stages.append(self._initial())
            else:
                self.stages.append(self._extend(self.stages[-1]))
        return self.stages[index]

    def _initial(self) -> FiltrationStage:
        elements = [
            self.reducer.corolla(operation)
            for operation in self.data.ambient.operations(
                self.target.output,
                self.target.inputs,
            )
        ]
        return FiltrationStage(
            index=0,
            target=self.target,
            elements=_stage_gset(elements, self.target),
            inclusion=None,
            final=self.final,
        )

    def _extend(self, previous: FiltrationStage) -> FiltrationStage:
        index = previous.index + 1
        reduced = trees.enumerate_reduced(
            source=self.data.source,
            count=index,
            target=self.target,
            normal_support=self.support,
            vertex_bound=self.vertex_bound,
            colorset=self.colorset,
        )
        attached_tuples = self.data.quotients(index, index - 1).tuples
        realized: dict[tuple[str, typing.Any], trees.LabeledTree] = {}
        attaching: dict[tuple[str, typing.Any], trees.LabeledTree] = {}
        contributions = []
        for tree in reduced:
            shape = _Shape(tree, self.data, self.target.inputs)
            decorations = shape.decorations()
            induced = fincat.induce(
                decorations,
                shape.conjugation(),
                check=False,
            )
            attached = 0
            for element in induced:
                key = (str(tree), element)
                realized[key] = shape.realize(element)
                if shape.generators(element[0]) in attached_tuples:
                    attached += 1
                    attaching[key] = self._attach(realized[key], previous)
            contributions.append(
                TreeContribution(
                    tree=tree,
                    automorphisms=shape.aut.order,
                    decorations=len(decorations),
                    attached=attached,
                    added=len(induced) - attached,
                ),
            )
        square = fincat.pushout(
            fincat.FinMap(
                source=fincat.FinSet.of(attaching),
                target=previous.elements.base,
                mapping=attaching,
            ),
            fincat.FinMap(
                source=fincat.FinSet.of(attaching),
                target=fincat.FinSet.of(realized),
                mapping={key: key for key in attaching},
            ),
        )
        elements = {
            element: (
                element[1]
                if element[0] == fincat.LEFT_TAG
                else realized[element[1]]
            )
            for element in square.carrier
        }
        if len(set(elements.values())) != len(elements):
            raise exceptions.ReductionError(
                f"Stage {index} at {self.target} identifies distinct trees",
            )
        inclusion = fincat.FinMap(
            source=previous.elements.base,
            target=fincat.FinSet.of(elements.values()),
            mapping={
                tree: elements[square.left(tree)]
                for tree in previous.elements.base
            },
        )
        if not inclusion.is_injective:
            raise exceptions.ReductionError(
                f"Stage {index} at {self.target} "
                f"doesn't contain stage {index - 1}",
            )
        stage = FiltrationStage(
            index=index,
            target=self.target,
            elements=_stage_gset(elements.values(), self.target),
            inclusion=inclusion,
            contributions=tuple(contributions),
            exhausted=reduced.exhausted,
            final=self.final or previous.final,
        )
        logger.info(
            "Stage %s at %s adds %s elements from %s trees",
            index,
            self.target,
            stage.added,
            len(reduced),
        )
        return stage

    def _attach(
        self,
        tree: trees.LabeledTree,
        previous: FiltrationStage,
    ) -> trees.LabeledTree:
        reduced = self.reducer.reduce(tree)
        if reduced not in previous.elements:
            raise exceptions.ReductionError(
                f"Tree {tree} reduces to {reduced}, which is not in stage "
                f"{previous.index} at {self.target}",
            )
        return reduced


def free_extension(
    data: AttachmentData,
    target: IOPair,
    stages: int | None = None,
    vertex_bound: int | None = None,
) -> list[FiltrationStage]:
    """Return stages ``A_0 .. A_K`` of ``A[Y]`` at one entry."""
    stages = settings.stages if stages is None else stages
    filtration = Filtration(data, target, vertex_bound)
    return [filtration.stage(index) for index in range(stages + 1)]


@dataclasses.dataclass(frozen=True, eq=False)
class ExtensionOperad(Operad):
    """Pushout ``A[Y]`` truncated at a number of stages.

    Entries hold normal trees with at most ``stages`` distinguished
    vertices, composition grafts and reduces without bound.

    """

    data: AttachmentData
    stages: int = dataclasses.field(default_factory=lambda: settings.stages)
    vertex_bound: int = dataclasses.field(
        default_factory=lambda: settings.max_vertices,
    )

    @property
    def colorset(self) -> ColorSet:  # type: ignore[override]
        """Return colors of the ambient operad."""
        return self.data.colorset

    @functools.cached_property
    def reducer(self) -> Reducer:
        """Return reducer of the attachment."""
        return Reducer(self.data)

    @functools.cache  # noqa: B019
    def filtration(self, output: Color, representative: Profile) -> Filtration:
        """Return filtration at an entry."""
        return Filtration(
            self.data,
            IOPair(representative, output),
            self.vertex_bound,
        )

    def entry(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return last computed stage at an entry."""
        filtration = self.filtration(output, tuple(representative))
        return filtration.stage(self.stages).elements

    def unit_element(self, color: Color) -> trees.LabeledTree:
        """Return corolla of the ambient unit."""
        return self.reducer.corolla(self.data.ambient.unit(color))

    def compose_representatives(
        self,
        output: Color,
        representative: Profile,
        element: trees.LabeledTree,
        bottoms: Sequence[Bottom],
    ) -> trees.LabeledTree:
        """Graft trees, reduce and renumber leaves."""
        grafted = trees.graft_labeled(
            element.root,
            [bottom.root for _, bottom in bottoms],
        )
        concatenated = tuple(
            itertools.chain.from_iterable(profile for profile, _ in bottoms),
        )
        return self.reducer.reduce(trees.LabeledTree(grafted)).relabel(
            profiles.transport(concatenated, self.colorset),
        )

    def keys(self, arity_bound: int) -> list[Key]:
        """Return keys of non empty entries up to arity bound."""
        return [
            (output, representative)
            for representative in self.colorset.representatives(arity_bound)
            for output in self.colorset
            if len(self.entry(output, representative))
        ]

    def stage_of(self, element: trees.LabeledTree) -> int:
        """Return number of distinguished vertices of an element."""
        return element.count_tag(GENERATOR_TAG)

    def generator(self, decoration: Decoration) -> trees.LabeledTree:
        """Return normal form of a generator corolla with given decoration."""
        source = self.data.source
        vertex = trees.DecoratedVertex(
            tag=GENERATOR_TAG,
            output=source.output,
            element=decoration,
            children=tuple(
                trees.LabeledLeaf(color, position)
                for position, color in enumerate(self.data.representative)
            ),
            entry=self.data.generator_entry,
        )
        return self.reducer.reduce(trees.LabeledTree(vertex))
