import pytest
from pytest_lazy_fixtures import lf

from operad_extensions import exceptions, operads
from operad_extensions.operads import Operad
from operad_extensions.profiles import ColorSet
from operad_extensions.pushout import dwyer_plus

from test_project.fixtures.factories import WeightsOperadFactory, table_operads


@pytest.mark.parametrize(
    argnames=["ambient", "expected_added"],
    argvalues=[
        pytest.param(lf("assoc_operad"), [1, 1, 1, 1], id="Assoc"),
        pytest.param(lf("com_operad"), [1, 1, 1, 1], id="Com"),
        pytest.param(
            operads.transformations(2, [(1, 1)], arity_bound=4),
            [2, 0, 0, 0],
            id="Transformations",
        ),
        pytest.param(
            operads.trivial(arity_bound=4),
            [1, 0, 0, 0],
            id="Trivial",
        ),
    ],
)
def test_added_elements_are_orbits(ambient: Operad, expected_added: list[int]):
    """Check that stage j of A+(0) adds one element per orbit of A(j)."""
    rows = dwyer_plus(ambient, 4)
    assert [row.arity for row in rows] == list(range(1, 5))
    assert [row.added for row in rows] == expected_added
    assert all(row.agrees for row in rows)


def test_random_weights():
    """Check that residues give ``modulus`` elements at every stage."""
    ambient = WeightsOperadFactory()
    rows = dwyer_plus(ambient, 3)
    modulus = len(ambient.entry("∗", ()))
    assert [row.added for row in rows] == [modulus] * 3
    assert all(row.agrees for row in rows)


def test_needs_single_color():
    """Check that colored operads are refused."""
    with pytest.raises(exceptions.OperadExtensionError):
        dwyer_plus(operads.com(ColorSet(("a", "b"))), 2)


def test_arity_beyond_ambient_bound():
    """Check that ambient operads must be known up to the last stage."""
    with pytest.raises(exceptions.OperadExtensionError):
        dwyer_plus(operads.assoc(arity_bound=2), 3)


@pytest.mark.parametrize(
    argnames="ambient",
    argvalues=[
        pytest.param(operad, id=f"Random {operad.name} {index}")
        for index, operad in enumerate(table_operads(5))
    ],
)
def test_random_operads(ambient: Operad):
    """Check stage contributions of random finite operads against orbits."""
    rows = dwyer_plus(ambient, 4)
    assert [row.arity for row in rows] == list(range(1, 5))
    assert all(row.agrees for row in rows)
