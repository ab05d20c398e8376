import pytest

from operad_extensions import exceptions, operads
from operad_extensions.operads import Operad
from operad_extensions.profiles import IOPair
from operad_extensions.pushout import (
    agrees,
    attachment,
    free_extension,
    oracle_pushout,
)

from test_project.fixtures.factories import TransformationsOperadFactory

STAR = "∗"
UNARY = IOPair((STAR,), STAR)
CONSTANT = IOPair((), STAR)


def test_unary_generator(trivial_operad: Operad):
    """Check that terms of a unary generator are powers of it."""
    data = attachment(trivial_operad, UNARY, {}, free=["y"])
    result = oracle_pushout(data, UNARY, size_bound=11)
    assert result.certified == 5
    assert result.classes == {count: 1 for count in range(12)}
    cumulative = [result.cumulative(stage) for stage in range(6)]
    assert cumulative == [1, 2, 3, 4, 5, 6]

    stages = free_extension(data, UNARY, stages=5, vertex_bound=11)
    assert agrees(stages, result)


def test_constant_over_com():
    """Check that terms with the same number of constants are identified."""
    data = attachment(operads.com(arity_bound=6), CONSTANT, {}, free=["y"])
    result = oracle_pushout(data, CONSTANT, size_bound=5)
    assert result.certified == 4
    assert [result.cumulative(stage) for stage in range(5)] == [1, 2, 3, 4, 5]
    assert agrees(free_extension(data, CONSTANT, stages=4), result)


@pytest.mark.slow
def test_binary_generator_over_transformations():
    """Check stage sizes of a binary generator against term classes."""
    ambient = operads.transformations(2, [(1, 1)], arity_bound=7)
    data = attachment(ambient, IOPair((STAR, STAR), STAR), {}, free=["y"])
    result = oracle_pushout(data, CONSTANT, size_bound=7)
    assert result.certified == 2
    assert result.terms <= 5000
    assert [result.cumulative(stage) for stage in range(3)] == [2, 10, 74]
    stages = free_extension(data, CONSTANT, stages=2, vertex_bound=7)
    assert agrees(stages, result)


def test_attached_generator(com_operad: Operad):
    """Check that generators from X don't give new classes."""
    binary = IOPair((STAR, STAR), STAR)
    data = attachment(com_operad, binary, {"x": "com"})
    result = oracle_pushout(data, binary, size_bound=3)
    assert result.classes == {0: 1}


def test_term_cap(trivial_operad: Operad):
    """Check that too many terms are refused."""
    data = attachment(trivial_operad, UNARY, {}, free=["y"])
    with pytest.raises(exceptions.EntrySizeCapExceeded):
        oracle_pushout(data, UNARY, size_bound=11, cap=3)


def test_uncertified_stages_are_skipped(trivial_operad: Operad):
    """Check that agreement ignores stages beyond the certified range."""
    data = attachment(trivial_operad, UNARY, {}, free=["y"])
    result = oracle_pushout(data, UNARY, size_bound=3)
    assert result.certified == 1
    assert not result.is_certified(2)
    stages = free_extension(data, UNARY, stages=3, vertex_bound=7)
    assert agrees(stages, result)


@pytest.mark.slow
@pytest.mark.parametrize(
    argnames="ambient",
    argvalues=[
        pytest.param(
            TransformationsOperadFactory(arity_bound=7),
            id=f"Random transformations {index}",
        )
        for index in range(3)
    ],
)
def test_binary_generator_over_random_operads(ambient: Operad):
    """Check agreement of two stages for random monoids of two points."""
    data = attachment(ambient, IOPair((STAR, STAR), STAR), {}, free=["y"])
    result = oracle_pushout(data, CONSTANT, size_bound=7)
    assert result.certified == 2
    stages = free_extension(data, CONSTANT, stages=2, vertex_bound=7)
    assert agrees(stages, result)


@pytest.mark.slow
def test_mixed_generators_over_com():
    """Check that attached and free binary generators agree with terms."""
    data = attachment(
        operads.com(arity_bound=7),
        IOPair((STAR, STAR), STAR),
        {"x": "com"},
        free=["y"],
    )
    result = oracle_pushout(data, CONSTANT, size_bound=7)
    assert result.certified == 2
    assert [result.cumulative(stage) for stage in range(3)] == [1, 2, 5]
    stages = free_extension(data, CONSTANT, stages=2, vertex_bound=7)
    assert [len(stage) for stage in stages] == [1, 2, 5]
    assert agrees(stages, result)


def test_mixed_unary_generators(trivial_operad: Operad):
    """Check that an attached unit beside a free unary generator agrees."""
    data = attachment(
        trivial_operad,
        UNARY,
        {"x": "id"},
        free=["y"],
    )
    result = oracle_pushout(data, UNARY, size_bound=3)
    stages = free_extension(data, UNARY, stages=3, vertex_bound=7)
    assert agrees(stages, result)
