"""Colors, profiles and the profile groupoid."""

import dataclasses
import functools
import itertools
from collections.abc import Iterator, Sequence

from . import exceptions, fincat, utils

Color = str
Profile = tuple[Color, ...]

# Characters used by tree encodings, they can't appear in color names
RESERVED_CHARACTERS = frozenset("|()[]{},:;<>*")


@dataclasses.dataclass(frozen=True)
class ColorSet:
    """Declared finite set of colors with a fixed total order.

    Order of declaration is the order used for canonical representatives.

    """

    colors: tuple[Color, ...]

    def __post_init__(self) -> None:
        if len(set(self.colors)) != len(self.colors):
            raise exceptions.OperadExtensionError(
                f"Colors are declared twice: {self.colors!r}",
            )
        for color in self.colors:
            if not isinstance(color, str) or not color:
                raise exceptions.OperadExtensionError(
                    f"Color name must be non empty string: {color!r}",
                )
            if RESERVED_CHARACTERS & set(color):
                raise exceptions.OperadExtensionError(
                    f"Color name {color!r} uses reserved characters",
                )

    @classmethod
    def single(cls, color: Color = "∗") -> "ColorSet":
        """Return color set with one color."""
        return cls((color,))

    @functools.cached_property
    def _ranks(self) -> dict[Color, int]:
        return {color: rank for rank, color in enumerate(self.colors)}

    def __contains__(self, color: object) -> bool:
        return color in self._ranks

    def __iter__(self) -> Iterator[Color]:
        return iter(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def rank(self, color: Color) -> int:
        """Return position of color in the declared order."""
        try:
            return self._ranks[color]
        except KeyError:
            raise exceptions.UndeclaredColorError(color, 0) from None

    def validate_profile(self, profile: Sequence[Color]) -> Profile:
        """Return profile as tuple after checking all colors are declared.

        Raises:
            UndeclaredColorError: with index of the first unknown color.

        """
        for index, color in enumerate(profile):
            if color not in self._ranks:
                raise exceptions.UndeclaredColorError(color, index)
        return tuple(profile)

    def representative(self, profile: Sequence[Color]) -> Profile:
        """Return canonical representative of the orbit of a profile."""
        return tuple(sorted(profile, key=self._ranks.__getitem__))

    def is_representative(self, profile: Sequence[Color]) -> bool:
        """Return True if profile is sorted in declared order."""
        return tuple(profile) == self.representative(profile)

    def representatives(self, arity_bound: int) -> Iterator[Profile]:
        """Iterate over representatives of all orbits up to arity bound."""
        for arity in range(arity_bound + 1):
            yield from itertools.combinations_with_replacement(
                self.colors,
                arity,
            )

    def profile_key(self, profile: Sequence[Color]) -> tuple[int, ...]:
        """Return sort key of a profile, shorter profiles come first."""
        return (len(profile), *(self._ranks[color] for color in profile))


@dataclasses.dataclass(frozen=True)
class IOPair:
    """Input profile together with an output color, ``(c; d)``."""

    inputs: Profile
    output: Color

    @property
    def arity(self) -> int:
        """Return number of inputs."""
        return len(self.inputs)

    def representative(self, colorset: ColorSet) -> "IOPair":
        """Return pair with canonical input profile."""
        return IOPair(colorset.representative(self.inputs), self.output)

    def validate(self, colorset: ColorSet) -> "IOPair":
        """Check all colors of the pair are declared."""
        colorset.validate_profile(self.inputs)
        colorset.validate_profile((self.output,))
        return self

    def sort_key(self) -> str:
        """Return key for canonical ordering."""
        return str(self)

    def __str__(self) -> str:
        return f"({self.output};{','.join(self.inputs)})"


@dataclasses.dataclass(frozen=True)
class ProfileOrbit:
    """Orbit ``[c]`` of a profile with the stabilizer of its representative.

    The stabilizer is the set of permutations ``s`` with ``rep . s == rep``
    which is the same set as for the left action on profiles.

    """

    representative: Profile
    stabilizer: fincat.PermGroup

    @property
    def arity(self) -> int:
        """Return length of profiles in orbit."""
        return len(self.representative)

    @property
    def size(self) -> int:
        """Return number of distinct profiles in orbit."""
        return len(set(itertools.permutations(self.representative)))

    def profiles(self) -> list[Profile]:
        """Return all profiles of orbit in lexicographic position order."""
        return sorted(set(itertools.permutations(self.representative)))


@functools.lru_cache(maxsize=4096)
def orbit_of(profile: Profile, colorset: ColorSet) -> ProfileOrbit:
    """Return orbit of a profile.

    Raises:
        UndeclaredColorError: with the index of the first unknown color.

    """
    colorset.validate_profile(profile)
    representative = colorset.representative(profile)
    return ProfileOrbit(
        representative=representative,
        stabilizer=fincat.PermGroup.stabilizer(representative),
    )


@functools.lru_cache(maxsize=8192)
def transport(profile: Profile, colorset: ColorSet) -> utils.Permutation:
    """Return canonical transport of a profile.

    It's the lexicographically minimal permutation ``t`` with
    ``permute(representative, t) == profile``: each position takes the
    smallest unused representative position of the same color.

    """
    representative = colorset.representative(profile)
    used = [False] * len(profile)
    result = []
    for color in profile:
        for position, candidate in enumerate(representative):
            if not used[position] and candidate == color:
                used[position] = True
                result.append(position)
                break
    return tuple(result)


def stabilizer_element(
    profile: Profile,
    permutation: utils.Permutation,
    colorset: ColorSet,
) -> utils.Permutation:
    """Return stabilizer element realizing action of a permutation.

    For an element ``x`` labeled at ``profile`` (meaning ``x . t(profile)``
    for canonical transport ``t``) its image under ``permutation`` is
    labeled by ``x . s`` where ``s`` is the returned element of the
    representative's stabilizer.

    """
    moved = utils.permute(profile, permutation)
    return utils.compose(
        utils.compose(transport(profile, colorset), permutation),
        utils.inverse(transport(moved, colorset)),
    )


def block_sum(permutations: Sequence[utils.Permutation]) -> utils.Permutation:
    """Return block permutation acting by each factor on its own block."""
    result: list[int] = []
    for permutation in permutations:
        offset = len(result)
        result.extend(offset + image for image in permutation)
    return tuple(result)


def block_permutation(
    permutation: utils.Permutation,
    sizes: Sequence[int],
) -> utils.Permutation:
    """Return permutation moving whole blocks.

    Blocks have ``sizes`` and are reordered so block ``i`` of the result is
    block ``permutation[i]`` of the source; composing
    ``x . permutation`` with bottoms ``y . permutation`` equals
    ``gamma(x; y)`` acted on by the returned permutation.

    """
    starts = utils.offsets(sizes)
    result = []
    for index in permutation:
        result.extend(range(starts[index], starts[index] + sizes[index]))
    return tuple(result)


def concat_homomorphism(
    parts: Sequence[Profile],
) -> tuple[Profile, fincat.Homomorphism]:
    """Return concatenated profile and block embedding into its group.

    The embedding sends a tuple of permutations of parts to the block
    permutation acting on consecutive segments.

    """
    profile = tuple(itertools.chain.from_iterable(parts))
    source = fincat.ProductGroup(
        tuple(fincat.PermGroup.symmetric(len(part)) for part in parts),
    )
    return profile, fincat.Homomorphism(
        source=source,
        target=fincat.PermGroup.symmetric(len(profile)),
        mapping=block_sum,
    )
