import pytest

from operad_extensions import exceptions, fincat
from operad_extensions.pushout import (
    QConstruction,
    q_cardinality,
    q_object,
    subset_model,
)

from test_project.fixtures.factories import InjectionFactory


@pytest.mark.parametrize(
    argnames=["q", "expected_size"],
    argvalues=[
        pytest.param(0, 1, id="Only X"),
        pytest.param(1, 3, id="One coordinate outside"),
        pytest.param(2, 4, id="All of Y"),
    ],
)
def test_q_cardinality(q: int, expected_size: int):
    """Check sizes for a point included into two points with ``t = 2``."""
    assert q_cardinality(1, 2, 2, q) == expected_size


@pytest.mark.parametrize(
    argnames=["source_size", "target_size"],
    argvalues=[
        pytest.param(0, 1, id="Empty X"),
        pytest.param(1, 2, id="Point in two points"),
        pytest.param(1, 3, id="Point in three points"),
        pytest.param(2, 3, id="Two points in three points"),
        pytest.param(2, 2, id="Bijection"),
    ],
)
def test_glued_objects_match_subsets(source_size: int, target_size: int):
    """Check that pushouts realize tuples with few coordinates outside X."""
    inclusion = InjectionFactory(
        source_size=source_size,
        target_size=target_size,
    )
    construction = QConstruction(inclusion)
    for t in range(5):
        for q in range(t + 1):
            glued = construction(t, q)
            assert len(glued) == q_cardinality(source_size, target_size, t, q)
            assert glued.tuples == subset_model(inclusion, t, q)


def test_q_object_is_action():
    """Check that symmetric group acts on glued objects."""
    inclusion = InjectionFactory(source_size=1, target_size=2)
    glued = q_object(inclusion, 3, 1)
    glued.carrier.validate()
    orbits, _ = fincat.quotient_by_action(glued.carrier)
    # Orbits are multisets with at most one coordinate outside X
    assert len(orbits) == 2


def test_identity_inclusion():
    """Check that nothing is interpolated for an identity."""
    points = fincat.FinSet.of(["a", "b", "c"])
    identity = fincat.FinMap(
        points,
        points,
        {point: point for point in points},
    )
    for q in range(3):
        assert len(q_object(identity, 2, q)) == 9


def test_non_injective_inclusion():
    """Check that collapsing maps are refused."""
    collapsing = fincat.FinMap(
        fincat.FinSet.of([0, 1]),
        fincat.FinSet.of([0]),
        {0: 0, 1: 0},
    )
    with pytest.raises(exceptions.NonInjectiveAttachmentError):
        QConstruction(collapsing)


@pytest.mark.parametrize(
    argnames=["t", "q"],
    argvalues=[
        pytest.param(1, 2, id="q above t"),
        pytest.param(2, -1, id="Negative q"),
    ],
)
def test_invalid_indices(t: int, q: int):
    """Check that indices outside ``0 <= q <= t`` are refused."""
    with pytest.raises(exceptions.OperadExtensionError):
        q_object(InjectionFactory(), t, q)
