import collections
import itertools

import pytest

from operad_extensions import exceptions, fincat, utils


def _relabeling(
    pair: tuple[int, ...],
    permutation: utils.Permutation,
) -> tuple[int, ...]:
    inverse = utils.inverse(permutation)
    return tuple(inverse[value] for value in pair)


def _inclusion(subgroup: fincat.PermGroup) -> fincat.Homomorphism:
    return fincat.Homomorphism(
        source=subgroup,
        target=fincat.PermGroup.symmetric(subgroup.degree),
        mapping=lambda element: element,
    )


@pytest.mark.parametrize(
    argnames=["gset", "expected_orbits"],
    argvalues=[
        pytest.param(
            fincat.GSet(
                base=fincat.FinSet.of(utils.all_permutations(2)),
                group=fincat.PermGroup.symmetric(2),
                action=utils.compose,
            ),
            1,
            id="Regular action is transitive",
        ),
        pytest.param(
            fincat.GSet.trivial(
                fincat.FinSet.of(range(3)),
                fincat.PermGroup.trivial(0),
            ),
            3,
            id="Trivial group",
        ),
        pytest.param(
            fincat.GSet(
                base=fincat.FinSet.of(
                    itertools.product(range(3), repeat=2),
                ),
                group=fincat.PermGroup.symmetric(3),
                action=_relabeling,
            ),
            2,
            id="Relabeling of ordered pairs",
        ),
    ],
)
def test_quotient_by_action(gset: fincat.GSet, expected_orbits: int):
    """Check that orbits are counted and every element is projected."""
    orbits, projection = fincat.quotient_by_action(gset)
    assert len(orbits) == expected_orbits
    assert set(projection) == set(gset)
    assert set(projection.values()) == set(orbits)


def test_relabeling_is_an_action():
    """Check that action axioms are checked on every pair."""
    gset = fincat.GSet(
        base=fincat.FinSet.of(itertools.product(range(3), repeat=2)),
        group=fincat.PermGroup.symmetric(3),
        action=_relabeling,
    )
    gset.validate()


def test_validate_rejects_broken_action():
    """Check that violated compatibility is named."""
    gset = fincat.GSet(
        base=fincat.FinSet.of(utils.all_permutations(3)),
        group=fincat.PermGroup.symmetric(3),
        action=lambda element, permutation: utils.compose(
            permutation,
            element,
        ),
    )
    with pytest.raises(exceptions.NotAnActionError) as error:
        gset.validate()
    assert error.value.axiom == "compatibility"


@pytest.mark.parametrize(
    argnames=["base", "action", "expected_size"],
    argvalues=[
        pytest.param(
            fincat.FinSet.singleton(),
            None,
            3,
            id="Point gives coset space",
        ),
        pytest.param(
            fincat.FinSet.of([(0, 1, 2), (1, 0, 2)]),
            utils.compose,
            6,
            id="Regular set gives regular set",
        ),
        pytest.param(
            fincat.FinSet.empty(),
            None,
            0,
            id="Empty set",
        ),
    ],
)
def test_induce_along_subgroup(
    base: fincat.FinSet,
    action,
    expected_size: int,
):
    """Check sizes of sets induced from the stabilizer of ``(a, a, b)``."""
    subgroup = fincat.PermGroup.stabilizer(("a", "a", "b"))
    gset = (
        fincat.GSet.trivial(base, subgroup)
        if action is None
        else fincat.GSet(base=base, group=subgroup, action=action)
    )
    induced = fincat.induce(gset, _inclusion(subgroup))
    assert len(induced) == expected_size
    induced.validate()
    if expected_size:
        orbits, _ = fincat.quotient_by_action(induced)
        assert len(orbits) == 1


def test_induce_rejects_non_homomorphism():
    """Check that maps not respecting products are rejected."""
    group = fincat.PermGroup.symmetric(3)
    constant = fincat.Homomorphism(
        source=group,
        target=group,
        mapping=lambda element: (1, 0, 2),
    )
    with pytest.raises(exceptions.NotAHomomorphismError):
        fincat.induce(
            fincat.GSet.trivial(fincat.FinSet.singleton(), group),
            constant,
        )


@pytest.mark.parametrize(
    argnames=[
        "common",
        "left",
        "right",
        "left_map",
        "right_map",
        "expected_size",
    ],
    argvalues=[
        pytest.param((), (0, 1), (0, 1, 2), {}, {}, 5, id="Coproduct"),
        pytest.param(
            (0, 1),
            (0, 1),
            (0, 1),
            {0: 0, 1: 1},
            {0: 0, 1: 1},
            2,
            id="Identities",
        ),
        pytest.param(
            (0,),
            (0, 1),
            (0, 1),
            {0: 1},
            {0: 0},
            3,
            id="One point glued",
        ),
        pytest.param(
            (0, 1),
            (0,),
            (0, 1),
            {0: 0, 1: 0},
            {0: 0, 1: 1},
            1,
            id="Collapsing leg",
        ),
    ],
)
def test_pushout_size(
    common: tuple[int, ...],
    left: tuple[int, ...],
    right: tuple[int, ...],
    left_map: dict[int, int],
    right_map: dict[int, int],
    expected_size: int,
):
    """Check that pushout glues images of common elements."""
    source = fincat.FinSet.of(common)
    square = fincat.pushout(
        fincat.FinMap(source, fincat.FinSet.of(left), left_map),
        fincat.FinMap(source, fincat.FinSet.of(right), right_map),
    )
    assert len(square.carrier) == expected_size
    for element in common:
        left_image = square.left(left_map[element])
        assert left_image == square.right(right_map[element])


def test_mediating_map():
    """Check that a cocone factors through the pushout."""
    source = fincat.FinSet.of([0])
    first = fincat.FinMap(source, fincat.FinSet.of([0, 1]), {0: 1})
    second = fincat.FinMap(source, fincat.FinSet.of([0, 1]), {0: 0})
    square = fincat.pushout(first, second)
    target = fincat.FinSet.of(["x", "y"])
    mediating = fincat.mediating_map(
        square,
        fincat.FinMap(first.target, target, {0: "x", 1: "y"}),
        fincat.FinMap(second.target, target, {0: "y", 1: "x"}),
    )
    assert mediating(square.left(1)) == "y"
    assert mediating(square.right(1)) == "x"


def test_mediating_map_rejects_non_cocone():
    """Check that legs disagreeing on a glued element are rejected."""
    source = fincat.FinSet.of([0])
    first = fincat.FinMap(source, fincat.FinSet.of([0]), {0: 0})
    square = fincat.pushout(first, first)
    target = fincat.FinSet.of(["x", "y"])
    with pytest.raises(exceptions.OperadExtensionError):
        fincat.mediating_map(
            square,
            fincat.FinMap(first.target, target, {0: "x"}),
            fincat.FinMap(first.target, target, {0: "y"}),
        )


def test_generated_group():
    """Check that sympy closure gives the full symmetric group."""
    group = fincat.PermGroup.generated(3, [(1, 0, 2), (1, 2, 0)])
    assert group.order == 6
    assert group.elements == fincat.PermGroup.symmetric(3).elements


def test_duplicate_elements_are_rejected():
    """Check that finite sets can't hold an element twice."""
    with pytest.raises(exceptions.OperadExtensionError):
        fincat.FinSet.of([1, 1])


def test_union_find_classes():
    """Check that unions merge classes transitively."""
    union_find = fincat.UnionFind()
    for item in range(5):
        union_find.add(item)
    union_find.union(0, 1)
    union_find.union(3, 1)
    classes = sorted(sorted(members) for members in union_find.classes())
    assert classes == [[0, 1, 3], [2], [4]]


ALTERNATING = fincat.PermGroup.from_elements(
    3,
    [(0, 1, 2), (1, 2, 0), (2, 0, 1)],
)


def _sign(permutation: utils.Permutation) -> utils.Permutation:
    inversions = sum(
        1
        for first, second in itertools.combinations(permutation, 2)
        if first > second
    )
    return (1, 0) if inversions % 2 else (0, 1)


def _subgroup_inclusion(
    subgroup: fincat.PermGroup,
    group: fincat.PermGroup,
) -> fincat.Homomorphism:
    return fincat.Homomorphism(
        source=subgroup,
        target=group,
        mapping=lambda element: element,
    )


def _check_equivariant_bijection(
    source: fincat.GSet,
    target: fincat.GSet,
    mapping: dict,
) -> None:
    assert set(mapping) == set(source)
    assert set(mapping.values()) == set(target)
    assert len(source) == len(target)
    for element, image in mapping.items():
        for group_element in source.group:
            moved = mapping[source.act(element, group_element)]
            assert moved == target.act(image, group_element)


@pytest.mark.parametrize(
    argnames=["gset"],
    argvalues=[
        pytest.param(
            fincat.GSet(
                base=fincat.FinSet.of(itertools.product(range(3), repeat=2)),
                group=fincat.PermGroup.symmetric(3),
                action=_relabeling,
            ),
            id="Relabeling of ordered pairs",
        ),
        pytest.param(
            fincat.GSet(
                base=fincat.FinSet.of(ALTERNATING),
                group=ALTERNATING,
                action=utils.compose,
            ),
            id="Regular alternating group",
        ),
        pytest.param(
            fincat.GSet.trivial(
                fincat.FinSet.of(["u", "v"]),
                fincat.PermGroup.stabilizer(("a", "a", "b")),
            ),
            id="Trivial action",
        ),
    ],
)
def test_induce_along_identity(gset: fincat.GSet):
    """Check that inducing along the identity changes nothing."""
    identity = fincat.Homomorphism.identity_of(gset.group)
    induced = fincat.induce(gset, identity)
    unit = gset.group.identity
    _check_equivariant_bijection(
        gset,
        induced,
        {element: induced.act((element, unit), unit) for element in gset},
    )


@pytest.mark.parametrize(
    argnames=["gset", "first", "second"],
    argvalues=[
        pytest.param(
            fincat.GSet.trivial(
                fincat.FinSet.of(["u", "v"]),
                fincat.PermGroup.trivial(3),
            ),
            _subgroup_inclusion(
                fincat.PermGroup.trivial(3),
                fincat.PermGroup.stabilizer(("a", "a", "b")),
            ),
            _subgroup_inclusion(
                fincat.PermGroup.stabilizer(("a", "a", "b")),
                fincat.PermGroup.symmetric(3),
            ),
            id="Chain of subgroups",
        ),
        pytest.param(
            fincat.GSet(
                base=fincat.FinSet.of(ALTERNATING),
                group=ALTERNATING,
                action=utils.compose,
            ),
            _subgroup_inclusion(ALTERNATING, fincat.PermGroup.symmetric(3)),
            fincat.Homomorphism(
                source=fincat.PermGroup.symmetric(3),
                target=fincat.PermGroup.symmetric(2),
                mapping=_sign,
            ),
            id="Alternating group then sign",
        ),
    ],
)
def test_induce_is_functorial(
    gset: fincat.GSet,
    first: fincat.Homomorphism,
    second: fincat.Homomorphism,
):
    """Check that inducing along a composite is inducing twice."""
    direct = fincat.induce(gset, first.then(second))
    nested = fincat.induce(fincat.induce(gset, first), second)
    target = second.target
    unit = target.identity
    _check_equivariant_bijection(
        nested,
        direct,
        {
            ((element, coset), outer): direct.act(
                (element, target.mul(second(coset), outer)),
                unit,
            )
            for (element, coset), outer in nested
        },
    )


def _maps(source_size: int, target_size: int) -> list[dict[int, int]]:
    return [
        dict(enumerate(images))
        for images in itertools.product(
            range(target_size),
            repeat=source_size,
        )
    ]


def _check_universal_property(
    left_map: dict[int, int],
    right_map: dict[int, int],
    left_size: int,
    right_size: int,
) -> None:
    """Count maps out of the pushout realizing each cocone to two points."""
    points = ("x", "y")
    target = fincat.FinSet.of(points)
    common = fincat.FinSet.of(left_map)
    left = fincat.FinSet.of(range(left_size))
    right = fincat.FinSet.of(range(right_size))
    square = fincat.pushout(
        fincat.FinMap(common, left, left_map),
        fincat.FinMap(common, right, right_map),
    )
    factorizations = collections.defaultdict(list)
    for images in itertools.product(points, repeat=len(square.carrier)):
        candidate = dict(zip(square.carrier, images, strict=True))
        cocone = (
            tuple(candidate[square.left(item)] for item in range(left_size)),
            tuple(candidate[square.right(item)] for item in range(right_size)),
        )
        factorizations[cocone].append(candidate)

    for left_images, right_images in itertools.product(
        itertools.product(points, repeat=left_size),
        itertools.product(points, repeat=right_size),
    ):
        is_cocone = all(
            left_images[left_map[item]] == right_images[right_map[item]]
            for item in left_map
        )
        found = factorizations[(left_images, right_images)]
        assert len(found) == is_cocone
        if is_cocone:
            mediating = fincat.mediating_map(
                square,
                fincat.FinMap(left, target, dict(enumerate(left_images))),
                fincat.FinMap(right, target, dict(enumerate(right_images))),
            )
            assert dict(mediating.mapping) == found[0]


@pytest.mark.slow
@pytest.mark.parametrize(
    argnames=["max_common", "max_leg"],
    argvalues=[
        pytest.param(2, 4, id="Legs up to 4 points"),
        pytest.param(3, 3, id="Common part of 3 points"),
    ],
)
def test_pushout_universal_property(max_common: int, max_leg: int):
    """Check that every cocone to two points factors exactly once."""
    for common_size, left_size, right_size in itertools.product(
        range(max_common + 1),
        range(max_leg + 1),
        range(max_leg + 1),
    ):
        for left_map in _maps(common_size, left_size):
            for right_map in _maps(common_size, right_size):
                _check_universal_property(
                    left_map,
                    right_map,
                    left_size,
                    right_size,
                )
