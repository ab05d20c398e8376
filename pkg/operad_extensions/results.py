import dataclasses
import typing
from collections.abc import Mapping


@dataclasses.dataclass(frozen=True)
class Violation:
    """Failed instance of an axiom."""

    axiom: str
    instance: typing.Any
    expected: typing.Any = None
    actual: typing.Any = None

    def __str__(self) -> str:
        return (
            f"{self.axiom}: {self.instance!r} "
            f"(expected {self.expected!r}, got {self.actual!r})"
        )


@dataclasses.dataclass
class ValidationReport:
    """Result of an exhaustive axiom check."""

    violations: list[Violation] = dataclasses.field(default_factory=list)
    checked_count: int = 0

    def add(self, violation: Violation) -> None:
        """Store violation."""
        self.violations.append(violation)

    def check(
        self,
        axiom: str,
        instance: typing.Any,
        expected: typing.Any,
        actual: typing.Any,
    ) -> bool:
        """Count checked instance, store violation if values differ."""
        self.checked_count += 1
        if expected == actual:
            return True
        self.add(Violation(axiom, instance, expected, actual))
        return False

    @property
    def has_violations(self) -> bool:
        """Return True if any instance failed."""
        return bool(self.violations)

    @property
    def violations_count(self) -> int:
        """Return number of failed instances."""
        return len(self.violations)

    def axioms(self) -> list[str]:
        """Return names of violated axioms without repetition."""
        return list(
            dict.fromkeys(violation.axiom for violation in self.violations),
        )

    def __str__(self) -> str:
        return f"{self.violations_count} violations"


@dataclasses.dataclass(frozen=True)
class BijectionWitness:
    """Entrywise equivariant bijections between two symmetric sequences.

    ``counterexample`` names the first entry where no bijection exists,
    in which case ``bijections`` holds the entries matched before it.

    """

    bijections: Mapping[typing.Any, Mapping[typing.Any, typing.Any]]
    counterexample: typing.Any = None

    @property
    def is_bijective(self) -> bool:
        """Return True if every entry was matched."""
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.is_bijective
