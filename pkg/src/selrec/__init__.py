"""Selection-function products, bar recursion, and the translations between them."""

from .errors import (ContractViolation, FuelExhausted, ParseError, SearchFailed,
                     SelrecError, ValidationError)
from .seqcore import OutcomeFn, Seq

__version__ = "0.1.0"

__all__ = [
    "ContractViolation", "FuelExhausted", "OutcomeFn", "ParseError", "SearchFailed",
    "SelrecError", "Seq", "ValidationError",
]
