"""Independent computation of free extensions by congruence closure.

Terms are trees of the free operad on non unit elements of the ambient
operad and all generators of ``Y``. Two rewrites generate the
congruence: composing two adjacent ambient vertices and replacing a
generator from ``X`` by its attached element. Unit vertices are removed
as soon as they appear. Classes are counted by the number of generators
outside of ``X``, a count is certified when every normal form with that
many generators fits into the term bound.

"""

import collections
import dataclasses
import functools
import logging
import typing
from collections.abc import Iterator, Mapping, Sequence

from .. import exceptions, fincat, trees
from ..conf import settings
from ..operads import FreeOperad, Operation
from ..profiles import Color, IOPair, Profile
from ..symseq import SymSeq
from .filtration import GENERATOR_TAG, NORMAL_TAG, AttachmentData

logger = logging.getLogger(__name__)

TERM_TAG = "T"


@dataclasses.dataclass(frozen=True)
class OracleResult:
    """Classes of terms grouped by number of free generators."""

    target: IOPair
    size_bound: int
    classes: Mapping[int, int]
    certified: int
    terms: int

    def cumulative(self, stage: int) -> int:
        """Return number of classes with at most ``stage`` free generators."""
        return sum(
            count for index, count in self.classes.items() if index <= stage
        )

    def is_certified(self, stage: int) -> bool:
        """Return True if counts up to ``stage`` are complete."""
        return stage <= self.certified


class TermRewriter:
    """One step rewrites of terms over an attachment."""

    def __init__(self, data: AttachmentData, arity_bound: int) -> None:
        self.data = data
        self.ambient = data.ambient
        self.colorset = data.colorset
        self.arity_bound = arity_bound

    @functools.cached_property
    def generators(self) -> SymSeq:
        """Return generators of terms up to arity bound."""
        keys = set(self.ambient.keys(self.arity_bound))
        keys.add((self.data.source.output, self.data.representative))
        return SymSeq.build(
            self.colorset,
            {key: self.entry(*key) for key in keys},
        )

    def _is_unit(self, operation: Operation) -> bool:
        unit = self.ambient.unit_element(operation.output)
        return (
            operation.inputs == (operation.output,)
            and operation.element == unit
        )

    @functools.cache  # noqa: B019
    def entry(self, output: Color, representative: Profile) -> fincat.GSet:
        """Return ambient non units and generators at a representative."""
        ambient = self.ambient.entry(output, representative)
        elements = [
            (NORMAL_TAG, element)
            for element in ambient
            if not self._is_unit(Operation(output, representative, element))
        ]
        is_generator_key = (output, representative) == (
            self.data.source.output,
            self.data.representative,
        )
        if is_generator_key:
            elements.extend(
                (GENERATOR_TAG, decoration)
                for decoration in self.data.generator_entry
            )

        def action(element: tuple, permutation: tuple[int, ...]) -> tuple:
            tag, label = element
            if tag == NORMAL_TAG:
                return tag, ambient.act(label, permutation)
            return tag, self.data.generator_entry.act(label, permutation)

        return fincat.GSet(
            base=fincat.FinSet.of(elements),
            group=ambient.group,
            action=action,
        )

    def vertex(
        self,
        operation: Operation,
        children: Sequence[trees.LabeledNode],
    ) -> trees.LabeledNode:
        """Return term vertex of an ambient operation, units are removed."""
        if self._is_unit(operation):
            return children[0]
        return trees.decorated_vertex(
            tag=TERM_TAG,
            output=operation.output,
            profile=operation.inputs,
            element=(NORMAL_TAG, operation.element),
            children=children,
            entry=self.entry(
                operation.output,
                self.colorset.representative(operation.inputs),
            ),
            colorset=self.colorset,
        )

    def _at_root(
        self,
        node: trees.DecoratedVertex,
    ) -> Iterator[trees.LabeledNode]:
        tag, label = node.element
        if tag == GENERATOR_TAG:
            if self.data.is_attached(label[0]):
                yield self.vertex(
                    Operation(
                        node.output,
                        node.profile,
                        self.data.attached_element(label),
                    ),
                    node.children,
                )
            return
        top = Operation(node.output, node.profile, label)
        for index, child in enumerate(node.children):
            if not isinstance(child, trees.DecoratedVertex):
                continue
            child_tag, child_label = child.element
            if child_tag != NORMAL_TAG:
                continue
            composite = self.ambient.compose_at(
                top,
                index,
                Operation(child.output, child.profile, child_label),
            )
            yield self.vertex(
                composite,
                (
                    *node.children[:index],
                    *child.children,
                    *node.children[index + 1:],
                ),
            )

    def rewrites(self, node: trees.LabeledNode) -> Iterator[trees.LabeledNode]:
        """Iterate over terms one rewrite away."""
        if isinstance(node, trees.LabeledLeaf):
            return
        yield from self._at_root(node)
        for index, child in enumerate(node.children):
            for replaced in self.rewrites(child):
                yield dataclasses.replace(
                    node,
                    children=(
                        *node.children[:index],
                        replaced,
                        *node.children[index + 1:],
                    ),
                )

    def free_count(self, term: trees.LabeledTree) -> int:
        """Return number of generators outside of ``X``."""
        return sum(
            vertex.element[0] == GENERATOR_TAG
            and not self.data.is_attached(vertex.element[1][0])
            for vertex in term.vertices()
        )


def oracle_pushout(
    data: AttachmentData,
    target: IOPair,
    size_bound: int | None = None,
    cap: int | None = None,
) -> OracleResult:
    """Return classes of terms of ``A[Y]`` at one entry.

    The ambient operad must be known up to arity
    ``arity(target) + size_bound``.

    Raises:
        EntrySizeCapExceeded: if there are more terms than ``cap``.

    """
    if size_bound is None:
        size_bound = settings.oracle_size_bound
    cap = settings.entry_size_cap if cap is None else cap
    colorset = data.colorset
    target = target.validate(colorset).representative(colorset)
    rewriter = TermRewriter(data, target.arity + size_bound)
    terms = FreeOperad(
        generators=rewriter.generators,
        vertex_bound=size_bound,
        tag=TERM_TAG,
    ).enumerate(target.output, target.inputs)
    if len(terms) > cap:
        raise exceptions.EntrySizeCapExceeded(str(target), len(terms), cap)
    union_find = fincat.UnionFind()
    pending = collections.deque(terms)
    for term in terms:
        union_find.add(term)
    while pending:
        term = pending.popleft()
        for rewritten in rewriter.rewrites(term.root):
            reduced = trees.LabeledTree.canonical(rewritten)
            if reduced not in union_find.parents:
                union_find.add(reduced)
                pending.append(reduced)
            union_find.union(term, reduced)
    counts: collections.Counter[int] = collections.Counter()
    for members in union_find.classes():
        counts[rewriter.free_count(members[0])] += 1
    certified = (size_bound - 1) // (data.source.arity + 1)
    logger.info(
        "Oracle found %s classes among %s terms at %s",
        sum(counts.values()),
        len(terms),
        target,
    )
    return OracleResult(
        target=target,
        size_bound=size_bound,
        classes=dict(sorted(counts.items())),
        certified=certified,
        terms=len(terms),
    )


def agrees(
    stages: Sequence[typing.Any],
    result: OracleResult,
) -> bool:
    """Return True if cumulative stage sizes match certified oracle counts."""
    return all(
        len(stage) == result.cumulative(stage.index)
        for stage in stages
        if result.is_certified(stage.index) and not stage.exhausted
    )
