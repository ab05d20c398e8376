import itertools

import pytest
from pytest_lazy_fixtures import lf

from operad_extensions import exceptions, fincat, operads
from operad_extensions.operads import (
    ColoredFinSet,
    MonoidTable,
    Operad,
    Operation,
    TableOperad,
)
from operad_extensions.profiles import ColorSet, IOPair
from operad_extensions.symseq import SymSeq

from test_project.fixtures.factories import table_operads

STAR = "∗"
BINARY = (STAR, STAR)


def _operation(arity: int, element) -> Operation:
    return Operation(STAR, (STAR,) * arity, element)


@pytest.fixture
def binary_generator(colorset: ColorSet) -> SymSeq:
    """Return one binary generator acted on trivially."""
    return SymSeq.build(
        colorset,
        {
            (STAR, BINARY): fincat.GSet.trivial(
                fincat.FinSet.of(["m"]),
                fincat.PermGroup.symmetric(2),
            ),
        },
    )


@pytest.fixture
def max_monoid() -> MonoidTable:
    """Return monoid ``{0, 1}`` with maximum as product."""
    return MonoidTable(
        elements=(0, 1),
        table={
            (a, b): max(a, b)
            for a, b in itertools.product((0, 1), repeat=2)
        },
        unit=0,
    )


@pytest.fixture
def left_zero_monoid() -> MonoidTable:
    """Return monoid ``{e, a, b}`` with ``xy = x`` for ``x != e``."""
    elements = ("e", "a", "b")
    table = {}
    for first, second in itertools.product(elements, repeat=2):
        table[(first, second)] = second if first == "e" else first
    return MonoidTable(elements=elements, table=table, unit="e")


def test_assoc_composition(assoc_operad: Operad):
    """Check that orders of blocks are substituted into the top order."""
    composite = assoc_operad.gamma(
        _operation(2, (1, 0)),
        [_operation(2, (0, 1)), assoc_operad.unit(STAR)],
    )
    assert composite == _operation(3, (2, 0, 1))
    assert assoc_operad.compose_at(
        _operation(2, (0, 1)),
        0,
        _operation(2, (0, 1)),
    ) == _operation(3, (0, 1, 2))


def test_assoc_action(assoc_operad: Operad):
    """Check that permutations reorder inputs of orders."""
    acted = assoc_operad.act(_operation(2, (0, 1)), (1, 0))
    assert acted == _operation(2, (1, 0))
    assert assoc_operad.act(_operation(3, (0, 1, 2)), (1, 2, 0)) == _operation(
        3,
        (2, 0, 1),
    )


def test_colored_composition(two_colors: ColorSet):
    """Check that composites at non representative profiles keep inputs."""
    operad = operads.com(two_colors)
    composite = operad.gamma(
        Operation("a", ("b", "a"), "com"),
        [Operation("b", ("a",), "com"), operad.unit("a")],
    )
    assert composite == Operation("a", ("a", "a"), "com")


def test_gamma_color_mismatch(two_colors: ColorSet):
    """Check that bottoms with wrong output color are refused."""
    operad = operads.com(two_colors)
    with pytest.raises(exceptions.ColorMismatchError) as error:
        operad.gamma(
            Operation("a", ("a", "b"), "com"),
            [operad.unit("b"), operad.unit("b")],
        )
    assert error.value.index == 0


@pytest.mark.parametrize(
    argnames=["call"],
    argvalues=[
        pytest.param(
            lambda operad: operad.gamma(
                _operation(2, "com"),
                [operad.unit(STAR)],
            ),
            id="Missing bottom",
        ),
        pytest.param(
            lambda operad: operad.compose_at(
                _operation(2, "com"),
                2,
                operad.unit(STAR),
            ),
            id="Missing input",
        ),
        pytest.param(
            lambda operad: operad.act(_operation(2, "com"), (0,)),
            id="Short permutation",
        ),
    ],
)
def test_arity_mismatch(com_operad: Operad, call):
    """Check that compositions and actions of wrong arity are refused."""
    with pytest.raises(exceptions.ColorMismatchError):
        call(com_operad)


def test_entry_beyond_arity_bound(assoc_operad: TableOperad):
    """Check that table operads refuse entries they don't know."""
    with pytest.raises(exceptions.OperadExtensionError):
        assoc_operad.entry(STAR, (STAR,) * 5)
    assert len(assoc_operad.keys(10)) == 5


def test_weights_composition():
    """Check that residues are added."""
    operad = operads.weights(3)
    assert operad.gamma(
        _operation(2, 2),
        [_operation(1, 2), _operation(0, 1)],
    ) == _operation(1, 2)


def test_transformations_composition():
    """Check evaluation of maps at points."""
    operad = operads.transformations(2, [(1, 1)])
    assert len(operad.entry(STAR, (STAR,))) == 2
    composite = operad.gamma(_operation(1, (1, 1)), [_operation(0, 0)])
    assert composite == _operation(0, 1)
    assert operad.gamma(
        _operation(1, (1, 1)),
        [_operation(1, (0, 1))],
    ) == _operation(1, (1, 1))


@pytest.mark.parametrize(
    argnames=["maps", "expected"],
    argvalues=[
        pytest.param([(1, 1)], ((0, 1), (1, 1)), id="Constant map"),
        pytest.param([(1, 0)], ((0, 1), (1, 0)), id="Swap"),
        pytest.param([], ((0, 1),), id="No maps"),
    ],
)
def test_monoid_closure(maps: list[tuple[int, ...]], expected: tuple):
    """Check that generated monoids contain identity and products."""
    assert operads.monoid_closure(2, maps) == expected


@pytest.mark.parametrize(
    argnames=["call"],
    argvalues=[
        pytest.param(lambda: operads.preset("lie"), id="Unknown preset"),
        pytest.param(
            lambda: operads.weights(2, ColorSet(("a", "b"))),
            id="Two colors",
        ),
        pytest.param(
            lambda: operads.transformations(2, [(0, 2)]),
            id="Not a map",
        ),
    ],
)
def test_preset_errors(call):
    """Check that invalid preset requests are refused."""
    with pytest.raises(exceptions.OperadExtensionError):
        call()


@pytest.mark.parametrize(
    argnames=["operad", "bound"],
    argvalues=[
        pytest.param(lf("assoc_operad"), 3, id="Assoc"),
        pytest.param(lf("com_operad"), 3, id="Com"),
        pytest.param(lf("trivial_operad"), 3, id="Trivial"),
        pytest.param(
            operads.com(ColorSet(("a", "b"))),
            2,
            id="Two colored com",
        ),
        *(
            pytest.param(operad, 2, id=f"Random {operad.name} {index}")
            for index, operad in enumerate(table_operads(4))
        ),
    ],
)
def test_presets_are_operads(operad: Operad, bound: int):
    """Check that presets satisfy all axioms within the bound."""
    report = operads.validate_operad(operad, bound)
    assert not report.has_violations, report.violations[:3]
    assert report.checked_count > 0


@pytest.mark.slow
def test_assoc_is_operad_in_arity_four(assoc_operad: Operad):
    """Check assoc axioms with four inputs."""
    assert str(operads.validate_operad(assoc_operad, 4)) == "0 violations"


def test_broken_composite_is_reported():
    """Check that a replaced composite violates the right unit axiom."""
    instance = (STAR, BINARY, (0, 1), (((STAR,), (0,)), ((STAR,), (0,))))
    broken = (
        operads.assoc(arity_bound=3)
        .materialize(3)
        .with_composite(instance, (1, 0))
    )
    report = operads.validate_operad(broken, 3)
    assert report.has_violations
    assert "right unit" in report.axioms()


def test_with_composite_needs_table(assoc_operad: TableOperad):
    """Check that rule based operads can't be patched."""
    with pytest.raises(exceptions.OperadExtensionError):
        assoc_operad.with_composite((STAR, (), (), ()), ())


def test_materialized_operad_keeps_composites(assoc_operad: TableOperad):
    """Check that tables reproduce the rule they were built from."""
    table = assoc_operad.materialize(3)
    top, bottom = _operation(2, (1, 0)), _operation(1, (0,))
    expected = assoc_operad.gamma(top, [bottom, bottom])
    assert table.gamma(top, [bottom, bottom]) == expected


@pytest.mark.parametrize(
    argnames=["entry", "expected_size"],
    argvalues=[
        pytest.param(IOPair((STAR,), STAR), 1, id="Unit only"),
        pytest.param(IOPair(BINARY, STAR), 1, id="Generator"),
        pytest.param(IOPair((STAR,) * 3, STAR), 3, id="Two vertices"),
        pytest.param(IOPair((), STAR), 0, id="No constants"),
    ],
)
def test_free_operad_on_binary_generator(
    binary_generator: SymSeq,
    entry: IOPair,
    expected_size: int,
):
    """Check sizes of free operad entries on a commutative generator."""
    result = operads.free_operad(binary_generator, entry)
    assert len(result) == expected_size
    assert result.complete


def test_free_operad_on_empty_sequence(colorset: ColorSet):
    """Check that free operad on nothing has only units."""
    empty = SymSeq(colorset=colorset)
    assert len(operads.free_operad(empty, IOPair((STAR,), STAR))) == 1
    assert len(operads.free_operad(empty, IOPair(BINARY, STAR))) == 0


def test_free_operad_on_unary_generator(colorset: ColorSet):
    """Check that unary generators give entries cut by the vertex bound."""
    unary = SymSeq.build(
        colorset,
        {
            (STAR, (STAR,)): fincat.GSet.trivial(
                fincat.FinSet.of(["f"]),
                fincat.PermGroup.trivial(1),
            ),
        },
    )
    result = operads.free_operad(unary, IOPair((STAR,), STAR), vertex_bound=4)
    assert len(result) == 5
    assert not result.complete


def test_free_operad_axioms(binary_generator: SymSeq):
    """Check that grafting satisfies operad axioms."""
    operad = operads.FreeOperad(generators=binary_generator, vertex_bound=2)
    generator = operad.generator((STAR, BINARY), "m")
    composite = operad.compose_at(
        Operation(STAR, BINARY, generator),
        0,
        Operation(STAR, BINARY, generator),
    )
    assert composite.element in operad.entry(STAR, (STAR,) * 3)
    assert composite.element.vertex_count == 2
    assert not operads.validate_operad(operad, 3).has_violations


@pytest.mark.parametrize(
    argnames=["vertex_profiles", "target", "colors", "expected_size"],
    argvalues=[
        pytest.param(
            [IOPair(BINARY, STAR), IOPair((), STAR)],
            IOPair((STAR,), STAR),
            (STAR,),
            1,
            id="Binary over constant",
        ),
        pytest.param(
            [IOPair(BINARY, STAR), IOPair(BINARY, STAR)],
            IOPair((STAR,) * 3, STAR),
            (STAR,),
            6,
            id="Two binary vertices",
        ),
        pytest.param(
            [IOPair(("b",), "a")],
            IOPair(("b",), "b"),
            ("a", "b"),
            0,
            id="Wrong output color",
        ),
    ],
)
def test_opc_entry(
    vertex_profiles: list[IOPair],
    target: IOPair,
    colors: tuple[str, ...],
    expected_size: int,
):
    """Check trees using every vertex profile once."""
    result = operads.opc_entry(vertex_profiles, target, ColorSet(colors))
    assert len(result) == expected_size


def test_endomorphism_sizes(colorset: ColorSet):
    """Check that entries hold all maps between powers."""
    carriers = ColoredFinSet(colorset, {STAR: fincat.FinSet.of([0, 1])})
    operad = operads.endomorphism(carriers, 2)
    assert len(operad.entry(STAR, ())) == 2
    assert len(operad.entry(STAR, (STAR,))) == 4
    assert len(operad.entry(STAR, BINARY)) == 16
    for profile in ((), (STAR,), BINARY):
        assert len(operad.entry(STAR, profile)) == operads.entry_size(
            carriers,
            STAR,
            profile,
        )
    assert operad.unit(STAR).element == (0, 1)
    assert not operads.validate_operad(operad, 1).has_violations


def test_endomorphism_of_empty_carrier(two_colors: ColorSet):
    """Check that maps out of an empty power exist once."""
    carriers = ColoredFinSet(two_colors, {"b": fincat.FinSet.of([0])})
    operad = operads.endomorphism(carriers, 1)
    assert len(operad.entry("a", ("a",))) == 1
    assert len(operad.entry("a", ())) == 0
    assert len(operad.entry("b", ("a",))) == 1


def test_monoid_is_assoc_algebra(max_monoid: MonoidTable):
    """Check that monoid multiplication is an assoc algebra."""
    operad = operads.assoc(arity_bound=3)
    structure = operads.monoid_structure_map(operad, max_monoid)
    report = operads.check_algebra(operad, structure, 3)
    assert not report.has_violations, report.violations[:3]


def test_noncommutative_monoid_is_not_com_algebra(
    left_zero_monoid: MonoidTable,
):
    """Check that commutative structure fails on noncommutative monoid."""
    assert left_zero_monoid.is_associative
    assert left_zero_monoid.is_unital
    assert not left_zero_monoid.is_commutative
    operad = operads.com(arity_bound=2)
    structure = operads.monoid_structure_map(operad, left_zero_monoid)
    report = operads.check_algebra(operad, structure, 2)
    assert "equivariance" in report.axioms()


def test_point_algebra(trivial_operad: Operad, com_operad: Operad):
    """Check that a point is an algebra over any operad."""
    for operad in (trivial_operad, com_operad):
        point = operads.point_algebra(operad, 3)
        report = operads.check_algebra(operad, point, 3)
        assert not report.has_violations


def test_monoid_structure_needs_assoc_or_com(max_monoid: MonoidTable):
    """Check that other operads are refused."""
    with pytest.raises(exceptions.OperadExtensionError):
        operads.monoid_structure_map(operads.weights(2), max_monoid)
