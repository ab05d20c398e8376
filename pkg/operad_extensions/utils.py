import functools
import itertools
import typing
from collections.abc import Iterable, Iterator, Sequence

Permutation = tuple[int, ...]


def element_key(element: typing.Any) -> tuple[typing.Any, ...]:
    """Return sort key giving a total order on element identifiers.

    Element identifiers are ints, strings, tuples and frozensets of them or
    objects providing ``sort_key()`` (which must return a string). Elements
    of different kinds never compare directly, the leading tag of the key
    orders them.

    """
    if element is None:
        return (-1,)
    if isinstance(element, bool):
        return (0, int(element))
    if isinstance(element, int):
        return (0, element)
    if isinstance(element, str):
        return (1, element)
    if isinstance(element, tuple):
        return (2, tuple(element_key(item) for item in element))
    if isinstance(element, frozenset):
        return (3, tuple(sorted(element_key(item) for item in element)))
    sort_key = getattr(element, "sort_key", None)
    if sort_key is not None:
        return (4, sort_key())
    raise TypeError(f"Unsupported element identifier: {element!r}")


def sorted_elements(elements: Iterable[typing.Any]) -> list[typing.Any]:
    """Return elements in canonical order."""
    return sorted(elements, key=element_key)


def min_element(elements: Iterable[typing.Any]) -> typing.Any:
    """Return minimal element in canonical order."""
    return min(elements, key=element_key)


@functools.lru_cache(maxsize=64)
def identity_permutation(degree: int) -> Permutation:
    """Return identity permutation of `degree` points."""
    return tuple(range(degree))


def compose(first: Permutation, second: Permutation) -> Permutation:
    """Return product of permutations, ``second`` is applied first.

    With this product the right action ``permute`` satisfies
    ``permute(permute(seq, g), h) == permute(seq, compose(g, h))``.

    """
    return tuple(first[index] for index in second)


def inverse(permutation: Permutation) -> Permutation:
    """Return inverse permutation."""
    result = [0] * len(permutation)
    for index, image in enumerate(permutation):
        result[image] = index
    return tuple(result)


def permute(sequence: Sequence[typing.Any], permutation: Permutation) -> tuple:
    """Return sequence acted on by permutation from the right.

    Item ``i`` of the result is item ``permutation[i]`` of ``sequence``.

    """
    return tuple(sequence[index] for index in permutation)


def is_permutation(candidate: Sequence[int]) -> bool:
    """Return True if sequence lists every point below its length once."""
    return sorted(candidate) == list(range(len(candidate)))


def all_permutations(degree: int) -> Iterator[Permutation]:
    """Iterate over all permutations of `degree` points lexicographically."""
    return itertools.permutations(range(degree))


def offsets(sizes: Sequence[int]) -> list[int]:
    """Return start positions of consecutive blocks of given sizes."""
    return list(itertools.accumulate(sizes, initial=0))[:-1]


def format_permutation(permutation: Permutation) -> str:
    """Return compact textual form of a permutation."""
    return "[" + ",".join(str(image) for image in permutation) + "]"
