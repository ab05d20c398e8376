"""Colored rooted trees.

Two families of trees live here:

* marked trees (`MarkedTree`): shapes with unlabeled leaves and a set of
  distinguished vertices, they index the pushout filtration;
* labeled decorated trees (`LabeledTree`): vertices carry elements of
  symmetric sequences, leaves carry input positions. They are elements of
  free operads, of circle products and of free extensions.

In both families children of a vertex are kept in planar order, equality up
to non planar isomorphism is decided by canonical encodings.

"""

import dataclasses
import functools
import itertools
import logging
import math
import typing
from collections.abc import Callable, Iterable, Iterator, Sequence

from . import exceptions, fincat, profiles, utils
from .profiles import Color, ColorSet, IOPair, Profile

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Leaf:
    """Leaf (input flag) of a marked tree."""

    color: Color


@dataclasses.dataclass(frozen=True)
class Vertex:
    """Vertex of a marked tree, ``color`` is its output color."""

    color: Color
    children: tuple["Leaf | Vertex", ...] = ()
    distinguished: bool = False

    @property
    def profile(self) -> Profile:
        """Return planar input profile of vertex."""
        return tuple(child.color for child in self.children)


Node = Leaf | Vertex


@dataclasses.dataclass(frozen=True)
class MarkedTree:
    """Colored rooted tree with distinguished vertices.

    Tree without distinguished vertices is a plain colored tree, the tree
    whose root is a leaf is the edge.

    """

    root: Node

    @classmethod
    def corolla(
        cls,
        output: Color,
        inputs: Sequence[Color],
        distinguished: bool = False,
    ) -> "MarkedTree":
        """Return tree with one vertex."""
        return cls(
            Vertex(
                color=output,
                children=tuple(Leaf(color) for color in inputs),
                distinguished=distinguished,
            ),
        )

    @classmethod
    def edge(cls, color: Color) -> "MarkedTree":
        """Return tree without vertices."""
        return cls(Leaf(color))

    @property
    def output(self) -> Color:
        """Return color of root edge."""
        return self.root.color

    def nodes(self) -> list[Node]:
        """Return all vertices and leaves in preorder."""
        result: list[Node] = []

        def visit(node: Node) -> None:
            result.append(node)
            if isinstance(node, Vertex):
                for child in node.children:
                    visit(child)

        visit(self.root)
        return result

    def vertices(self) -> list[Vertex]:
        """Return vertices in preorder."""
        return [node for node in self.nodes() if isinstance(node, Vertex)]

    def leaves(self) -> list[Leaf]:
        """Return leaves in planar order."""
        return [node for node in self.nodes() if isinstance(node, Leaf)]

    @property
    def profile(self) -> Profile:
        """Return planar input profile."""
        return tuple(leaf.color for leaf in self.leaves())

    @property
    def vertex_count(self) -> int:
        """Return number of vertices."""
        return len(self.vertices())

    @property
    def distinguished_count(self) -> int:
        """Return number of distinguished vertices."""
        return sum(vertex.distinguished for vertex in self.vertices())

    def __str__(self) -> str:
        return canonical_form(self)


CTree = MarkedTree


@functools.lru_cache(maxsize=65536)
def _marked_code(node: Node) -> str:
    if isinstance(node, Leaf):
        return f"|{node.color}"
    mark = "*" if node.distinguished else "o"
    children = ",".join(sorted(_marked_code(child) for child in node.children))
    return f"({mark}{node.color}:{children})"


def canonical_form(tree: MarkedTree) -> str:
    """Return encoding equal for trees isomorphic as non planar trees.

    Isomorphisms preserve root, colors and distinguished vertices.

    """
    return _marked_code(tree.root)


def _canonical_node(node: Node) -> Node:
    if isinstance(node, Leaf):
        return node
    children = sorted(
        (_canonical_node(child) for child in node.children),
        key=_marked_code,
    )
    return dataclasses.replace(node, children=tuple(children))


def canonical_tree(tree: MarkedTree) -> MarkedTree:
    """Return planar representative with children sorted by encoding."""
    return MarkedTree(_canonical_node(tree.root))


@dataclasses.dataclass(frozen=True)
class _TreeIndex:
    """Preorder numbering of the nodes of a tree."""

    nodes: tuple[Node, ...]
    children: tuple[tuple[int, ...], ...]
    leaves: tuple[int, ...]

    @classmethod
    def of(cls, tree: MarkedTree) -> "_TreeIndex":
        nodes: list[Node] = []
        children: list[list[int]] = []

        def visit(node: Node) -> int:
            index = len(nodes)
            nodes.append(node)
            children.append([])
            if isinstance(node, Vertex):
                for child in node.children:
                    children[index].append(visit(child))
            return index

        visit(tree.root)
        return cls(
            nodes=tuple(nodes),
            children=tuple(map(tuple, children)),
            leaves=tuple(
                index
                for index, node in enumerate(nodes)
                if isinstance(node, Leaf)
            ),
        )

    def match(self, first: int, second: int) -> dict[int, int]:
        """Return node correspondence of two isomorphic subtrees."""
        mapping = {first: second}
        key = self.code
        first_children = sorted(self.children[first], key=key)
        second_children = sorted(self.children[second], key=key)
        for left, right in zip(first_children, second_children, strict=True):
            mapping.update(self.match(left, right))
        return mapping

    def code(self, index: int) -> str:
        return _marked_code(self.nodes[index])


@dataclasses.dataclass(frozen=True)
class TreeAut:
    """Automorphism group of a marked tree.

    Group elements are permutations of preorder node indices. They
    preserve root, colors and distinguished vertices.

    """

    tree: MarkedTree
    group: fincat.PermGroup
    children: tuple[tuple[int, ...], ...]
    leaves: tuple[int, ...]

    @property
    def order(self) -> int:
        """Return order of group."""
        return self.group.order

    @functools.cached_property
    def _leaf_positions(self) -> dict[int, int]:
        return {node: position for position, node in enumerate(self.leaves)}

    def leaf_action(
        self,
        automorphism: utils.Permutation,
    ) -> utils.Permutation:
        """Return induced permutation of planar leaf positions.

        Item ``p`` is the position of the image of the ``p``-th leaf.

        """
        positions = self._leaf_positions
        return tuple(positions[automorphism[leaf]] for leaf in self.leaves)

    def leaf_homomorphism(self) -> fincat.Homomorphism:
        """Return leaf action as map of groups."""
        return fincat.Homomorphism(
            source=self.group,
            target=fincat.PermGroup.symmetric(len(self.leaves)),
            mapping=self.leaf_action,
        )

    def local_permutation(
        self,
        automorphism: utils.Permutation,
        vertex: int,
    ) -> utils.Permutation:
        """Return how an automorphism reorders children of a vertex.

        Child ``i`` of ``vertex`` is sent to child ``result[i]`` of the
        image vertex.

        """
        image_children = self.children[automorphism[vertex]]
        return tuple(
            image_children.index(automorphism[child])
            for child in self.children[vertex]
        )


def automorphism_group(tree: MarkedTree) -> TreeAut:
    """Return automorphism group of a marked tree.

    It's generated by swaps of isomorphic sibling subtrees.

    """
    index = _TreeIndex.of(tree)
    degree = len(index.nodes)
    generators = []
    for children in index.children:
        ordered = sorted(children, key=index.code)
        for first, second in itertools.pairwise(ordered):
            if index.code(first) != index.code(second):
                continue
            swap = list(range(degree))
            for source, target in index.match(first, second).items():
                swap[source] = target
                swap[target] = source
            generators.append(tuple(swap))
    group = fincat.PermGroup.generated(degree, generators)
    logger.debug("Tree %s has %s automorphisms", tree, group.order)
    return TreeAut(
        tree=tree,
        group=group,
        children=index.children,
        leaves=index.leaves,
    )


def grafting_order(tree: MarkedTree) -> int:
    """Return automorphism group order from the grafting decomposition.

    A vertex with ``n_i`` copies of subtree ``T_i`` contributes
    ``|Aut(T_i)|^n_i * n_i!``.

    """

    def order(node: Node) -> int:
        if isinstance(node, Leaf):
            return 1
        result = 1
        multiplicities: dict[str, int] = {}
        for child in node.children:
            result *= order(child)
            code = _marked_code(child)
            multiplicities[code] = multiplicities.get(code, 0) + 1
        for multiplicity in multiplicities.values():
            result *= math.factorial(multiplicity)
        return result

    return order(tree.root)


def graft(lower: MarkedTree, leaf_index: int, upper: MarkedTree) -> MarkedTree:
    """Return tree with ``upper`` grafted onto a leaf of ``lower``.

    Raises:
        ColorMismatchError: if leaf color differs from the root color of
            ``upper``.
        OperadExtensionError: if there is no leaf with given index.

    """
    leaves = lower.leaves()
    if not 0 <= leaf_index < len(leaves):
        raise exceptions.OperadExtensionError(
            f"Tree has no leaf {leaf_index}",
        )
    if leaves[leaf_index].color != upper.output:
        raise exceptions.ColorMismatchError(
            f"Leaf {leaf_index} has color {leaves[leaf_index].color!r}, "
            f"grafted tree has output {upper.output!r}",
            index=leaf_index,
        )
    counter = itertools.count()

    def replace(node: Node) -> Node:
        if isinstance(node, Leaf):
            return upper.root if next(counter) == leaf_index else node
        return dataclasses.replace(
            node,
            children=tuple(replace(child) for child in node.children),
        )

    return MarkedTree(replace(lower.root))


def is_reduced(tree: MarkedTree) -> bool:
    """Return True if tree is well marked and has no adjacent normals.

    Every flag of a distinguished vertex must be an internal edge whose
    other end is a normal vertex, and no edge joins two normal vertices.

    """
    if isinstance(tree.root, Vertex) and tree.root.distinguished:
        return False
    for vertex in tree.vertices():
        for child in vertex.children:
            child_is_normal = (
                isinstance(child, Vertex) and not child.distinguished
            )
            if vertex.distinguished and not child_is_normal:
                return False
            if not vertex.distinguished and child_is_normal:
                return False
    return True


@dataclasses.dataclass(frozen=True)
class ReducedTrees:
    """Result of reduced tree enumeration.

    ``exhausted`` means trees beyond the vertex bound may exist and the
    list is not certified complete.

    """

    trees: tuple[MarkedTree, ...]
    exhausted: bool = False

    def __iter__(self) -> Iterator[MarkedTree]:
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)


def enumerate_reduced(
    source: IOPair,
    count: int,
    target: IOPair,
    normal_support: Iterable[IOPair],
    vertex_bound: int,
    colorset: ColorSet,
) -> ReducedTrees:
    """Return classes of reduced trees indexing a filtration stage.

    Trees have ``count`` distinguished vertices with profiles in the orbit
    of ``source``, overall profile in the orbit of ``target`` and normal
    vertices only at orbits from ``normal_support``. Such trees alternate
    normal and distinguished levels, so they have exactly
    ``1 + count * (arity(source) + 1)`` vertices when ``count`` is
    positive. The edge is listed for ``count == 0`` when the target is a
    unary identity profile.

    """
    if vertex_bound < count:
        raise exceptions.OperadExtensionError(
            f"Vertex bound {vertex_bound} is less than {count}",
        )
    source = source.representative(colorset)
    target = target.representative(colorset)
    support: dict[Color, list[Profile]] = {}
    for pair in sorted(
        {pair.representative(colorset) for pair in normal_support},
        key=lambda pair: (
            colorset.rank(pair.output),
            colorset.profile_key(pair.inputs),
        ),
    ):
        support.setdefault(pair.output, []).append(pair.inputs)

    if count == 0:
        candidates: list[Node] = []
        if target.inputs == (target.output,):
            candidates.append(Leaf(target.output))
        if target.inputs in support.get(target.output, []) and vertex_bound:
            candidates.append(
                Vertex(
                    color=target.output,
                    children=tuple(Leaf(color) for color in target.inputs),
                ),
            )
        return ReducedTrees(tuple(MarkedTree(node) for node in candidates))

    size = 1 + count * (source.arity + 1)
    if size > vertex_bound:
        logger.warning(
            "Reduced trees with %s distinguished vertices need %s vertices, "
            "bound is %s",
            count,
            size,
            vertex_bound,
        )
        return ReducedTrees((), exhausted=bool(support))

    @functools.cache
    def normal(color: Color, budget: int) -> tuple[Vertex, ...]:
        result = []
        for inputs in support.get(color, []):
            for children in fill(inputs, budget):
                result.append(Vertex(color=color, children=children))
        return tuple(result)

    @functools.cache
    def distinguished(color: Color, budget: int) -> tuple[Vertex, ...]:
        if color != source.output or budget < 1:
            return ()
        result = []
        for children in fill_normal(source.inputs, budget - 1):
            result.append(
                Vertex(color=color, children=children, distinguished=True),
            )
        return tuple(result)

    @functools.cache
    def fill(colors: Profile, budget: int) -> tuple[tuple[Node, ...], ...]:
        if not colors:
            return ((),) if budget == 0 else ()
        head, tail = colors[0], colors[1:]
        result: list[tuple[Node, ...]] = [
            (Leaf(head), *rest) for rest in fill(tail, budget)
        ]
        for used in range(1, budget + 1):
            for child in distinguished(head, used):
                result.extend(
                    (child, *rest) for rest in fill(tail, budget - used)
                )
        return tuple(result)

    @functools.cache
    def fill_normal(
        colors: Profile,
        budget: int,
    ) -> tuple[tuple[Node, ...], ...]:
        if not colors:
            return ((),) if budget == 0 else ()
        head, tail = colors[0], colors[1:]
        result: list[tuple[Node, ...]] = []
        for used in range(budget + 1):
            for child in normal(head, used):
                result.extend(
                    (child, *rest) for rest in fill_normal(tail, budget - used)
                )
        return tuple(result)

    found: dict[str, MarkedTree] = {}
    for root in normal(target.output, count):
        tree = MarkedTree(root)
        if colorset.representative(tree.profile) != target.inputs:
            continue
        found.setdefault(canonical_form(tree), canonical_tree(tree))
    logger.debug(
        "Found %s reduced trees with %s distinguished vertices for %s",
        len(found),
        count,
        target,
    )
    return ReducedTrees(tuple(found[code] for code in sorted(found)))


@dataclasses.dataclass(frozen=True)
class LabeledLeaf:
    """Leaf of a labeled tree, ``label`` is the input position."""

    color: Color
    label: int


@dataclasses.dataclass(frozen=True)
class DecoratedVertex:
    """Vertex decorated by an element of a symmetric sequence.

    Children are stored in representative order of the input profile and
    ``element`` is a label of the stored representative entry ``entry``.
    ``tag`` tells which sequence the element belongs to.

    """

    tag: str
    output: Color
    element: typing.Any
    children: tuple["LabeledLeaf | DecoratedVertex", ...]
    entry: fincat.GSet = dataclasses.field(
        compare=False,
        hash=False,
        repr=False,
    )

    @property
    def color(self) -> Color:
        """Return output color."""
        return self.output

    @property
    def profile(self) -> Profile:
        """Return input profile."""
        return tuple(child.color for child in self.children)


LabeledNode = LabeledLeaf | DecoratedVertex


def decorated_vertex(
    tag: str,
    output: Color,
    profile: Profile,
    element: typing.Any,
    children: Sequence[LabeledNode],
    entry: fincat.GSet,
    colorset: ColorSet,
) -> DecoratedVertex:
    """Return vertex for an element labeled at any profile.

    ``children`` follow ``profile``, they are moved to representative
    order so that child ``i`` lands on slot ``t[i]`` for the canonical
    transport ``t`` of ``profile``.

    """
    transport = profiles.transport(tuple(profile), colorset)
    ordered: list[LabeledNode | None] = [None] * len(children)
    for index, child in enumerate(children):
        ordered[transport[index]] = child
    return DecoratedVertex(
        tag=tag,
        output=output,
        element=element,
        children=tuple(typing.cast(list[LabeledNode], ordered)),
        entry=entry,
    )


def _vertex_code(
    tag: str,
    output: Color,
    element: typing.Any,
    children_codes: Sequence[str],
) -> str:
    return (
        f"V{tag}<{output}>{utils.element_key(element)!r}"
        f"({','.join(children_codes)})"
    )


def _best_arrangement(
    vertex: DecoratedVertex,
    children_codes: Sequence[str],
) -> tuple[utils.Permutation, typing.Any]:
    """Return stabilizer element minimizing the vertex encoding."""
    best = None
    for permutation in vertex.entry.group:
        element = vertex.entry.act(vertex.element, permutation)
        candidate = (
            tuple(children_codes[index] for index in permutation),
            utils.element_key(element),
        )
        if best is None or candidate < best[0]:
            best = (candidate, permutation, element)
    assert best is not None  # noqa: S101
    return best[1], best[2]


@functools.lru_cache(maxsize=131072)
def labeled_code(node: LabeledNode) -> str:
    """Return encoding of a labeled tree up to isomorphism.

    A vertex decorated by ``x`` with children ``k`` is isomorphic to the
    vertex decorated by ``x . s`` with children ``k[s[i]]`` for ``s`` from
    the stabilizer of its profile.

    """
    if isinstance(node, LabeledLeaf):
        return f"L{node.label}:{node.color}"
    codes = [labeled_code(child) for child in node.children]
    permutation, element = _best_arrangement(node, codes)
    return _vertex_code(
        node.tag,
        node.output,
        element,
        [codes[index] for index in permutation],
    )


@functools.lru_cache(maxsize=131072)
def canonicalize(node: LabeledNode) -> LabeledNode:
    """Return canonical planar representative of a labeled tree."""
    if isinstance(node, LabeledLeaf):
        return node
    children = [canonicalize(child) for child in node.children]
    codes = [labeled_code(child) for child in children]
    permutation, element = _best_arrangement(node, codes)
    return dataclasses.replace(
        node,
        element=element,
        children=tuple(children[index] for index in permutation),
    )


def map_leaves(
    node: LabeledNode,
    replace: Callable[[LabeledLeaf], LabeledNode],
) -> LabeledNode:
    """Return tree with every leaf replaced."""
    if isinstance(node, LabeledLeaf):
        return replace(node)
    return dataclasses.replace(
        node,
        children=tuple(map_leaves(child, replace) for child in node.children),
    )


def labeled_leaves(node: LabeledNode) -> list[LabeledLeaf]:
    """Return leaves in planar order."""
    if isinstance(node, LabeledLeaf):
        return [node]
    return [
        leaf for child in node.children for leaf in labeled_leaves(child)
    ]


def labeled_vertices(node: LabeledNode) -> list[DecoratedVertex]:
    """Return vertices in preorder."""
    if isinstance(node, LabeledLeaf):
        return []
    return [node] + [
        vertex for child in node.children for vertex in labeled_vertices(child)
    ]


@dataclasses.dataclass(frozen=True)
class LabeledTree:
    """Labeled decorated tree kept in canonical planar form.

    Leaf labels are positions of the input profile, so the tree is an
    operation with profile ``profile``. The right action of a permutation
    ``s`` relabels leaf ``p`` by ``s^-1[p]``.

    """

    root: LabeledNode

    @classmethod
    def canonical(cls, root: LabeledNode) -> "LabeledTree":
        """Return tree in canonical form."""
        return cls(canonicalize(root))

    @functools.cached_property
    def code(self) -> str:
        """Return isomorphism invariant encoding."""
        return labeled_code(self.root)

    def sort_key(self) -> str:
        """Return key for canonical ordering."""
        return self.code

    @property
    def output(self) -> Color:
        """Return root color."""
        return self.root.color

    def leaves(self) -> list[LabeledLeaf]:
        """Return leaves in planar order."""
        return labeled_leaves(self.root)

    def vertices(self) -> list[DecoratedVertex]:
        """Return vertices in preorder."""
        return labeled_vertices(self.root)

    @property
    def arity(self) -> int:
        """Return number of leaves."""
        return len(self.leaves())

    @property
    def profile(self) -> Profile:
        """Return input profile ordered by labels."""
        return tuple(
            leaf.color
            for leaf in sorted(self.leaves(), key=lambda leaf: leaf.label)
        )

    @property
    def vertex_count(self) -> int:
        """Return number of vertices."""
        return len(self.vertices())

    def count_tag(self, tag: str) -> int:
        """Return number of vertices decorated from a given source."""
        return sum(vertex.tag == tag for vertex in self.vertices())

    def relabel(self, mapping: Sequence[int]) -> "LabeledTree":
        """Return tree with leaf labels ``p`` replaced by ``mapping[p]``."""
        return LabeledTree.canonical(
            map_leaves(
                self.root,
                lambda leaf: LabeledLeaf(leaf.color, mapping[leaf.label]),
            ),
        )

    def act(self, permutation: utils.Permutation) -> "LabeledTree":
        """Return tree acted on by a permutation from the right."""
        return self.relabel(utils.inverse(permutation))

    def __str__(self) -> str:
        return self.code


def graft_labeled(
    top: LabeledNode,
    bottoms: Sequence[LabeledNode],
) -> LabeledNode:
    """Return tree with ``bottoms[j]`` grafted on the leaf labeled ``j``.

    Labels of bottoms are shifted so the result is labeled by positions
    of the concatenated profile of bottoms.

    Raises:
        ColorMismatchError: if a bottom does not fit its leaf.

    """
    sizes = [len(labeled_leaves(bottom)) for bottom in bottoms]
    starts = utils.offsets(sizes)

    def replace(leaf: LabeledLeaf) -> LabeledNode:
        bottom = bottoms[leaf.label]
        if bottom.color != leaf.color:
            raise exceptions.ColorMismatchError(
                f"Input {leaf.label} has color {leaf.color!r}, composed "
                f"operation has output {bottom.color!r}",
                index=leaf.label,
            )
        return map_leaves(
            bottom,
            lambda inner: LabeledLeaf(
                inner.color,
                starts[leaf.label] + inner.label,
            ),
        )

    return map_leaves(top, replace)
