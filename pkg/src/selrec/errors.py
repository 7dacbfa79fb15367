"""Exception types shared across the package."""

from __future__ import annotations


class SelrecError(Exception):
    """Base class for all errors raised by selrec."""


class FuelExhausted(SelrecError):
    """An evaluation used up its budget of recursor unfoldings."""

    def __init__(self, budget: int):
        super().__init__(f"fuel exhausted after {budget} unfoldings")
        self.budget = budget


class ContractViolation(SelrecError):
    """A data contract (modulus, omega bound) was broken at runtime."""


class SearchFailed(SelrecError):
    """The bounded search of the chi functional found no witness."""


class ParseError(SelrecError):
    """An instance document is not well-formed."""


class ValidationError(SelrecError):
    """An instance document is well-formed but breaks an invariant."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
