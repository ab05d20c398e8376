import typing


class OperadExtensionError(ValueError):
    """Base error for all computations of the package."""


class UndeclaredColorError(OperadExtensionError):
    """Raised when a profile uses a color missing from the color set."""

    def __init__(self, color: typing.Any, index: int) -> None:
        self.color = color
        self.index = index
        super().__init__(
            f"Color {color!r} at index {index} is not declared",
        )


class ColorMismatchError(OperadExtensionError):
    """Raised when profiles do not align for a composition or grafting."""

    def __init__(self, message: str, index: int | None = None) -> None:
        self.index = index
        super().__init__(message)


class NotAGroupError(OperadExtensionError):
    """Raised when a list of permutations is not closed under products."""


class NotAHomomorphismError(OperadExtensionError):
    """Raised when a map of groups does not respect products."""


class NotAnActionError(OperadExtensionError):
    """Raised when an action table violates one of the action axioms.

    ``instance`` keeps the offending data, so it can be shown to the user.

    """

    def __init__(self, axiom: str, instance: typing.Any) -> None:
        self.axiom = axiom
        self.instance = instance
        super().__init__(f"Action axiom '{axiom}' fails for {instance!r}")


class NonInjectiveAttachmentError(OperadExtensionError):
    """Raised when the generator map of an attachment is not injective."""


class ReductionError(OperadExtensionError):
    """Raised when a decorated tree can not be reduced to a known element."""


class EntrySizeCapExceeded(OperadExtensionError):
    """Raised when an entry grows beyond the configured size cap."""

    def __init__(self, key: typing.Any, size: int, cap: int) -> None:
        self.key = key
        self.size = size
        self.cap = cap
        super().__init__(
            f"Entry {key!r} has {size} elements, cap is {cap}",
        )


class DocumentError(OperadExtensionError):
    """Raised on invalid input documents.

    ``position`` is a json-path like string (``operads.A.gamma[3]``)
    pointing to the place of the problem.

    """

    def __init__(self, position: str, message: str) -> None:
        self.position = position
        super().__init__(f"{position}: {message}")
