from __future__ import annotations


class StratError(Exception):
    """Base class for every error raised by this package."""


class SignatureError(StratError):
    pass


class LogicMismatchError(StratError):
    pass


class SentenceError(StratError):
    """A sentence is malformed or mentions symbols outside its signature.

    ``position`` is a 0-based character offset when the error comes from the
    parser, else ``None``.
    """

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class CapabilityError(SentenceError):
    pass


class StateError(StratError):
    pass


class ModelValidationError(StratError):
    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("invalid model: " + "; ".join(self.violations))


class HomomorphismError(StratError):
    pass


class FilterError(StratError):
    pass


class ProductError(StratError):
    pass


class BoundsError(StratError):
    pass


class SchemaError(StratError):
    def __init__(self, messages: list[str] | str) -> None:
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))
