# ------------------------------
# Module: errors.py
# Description: Exceptions raised by the services
# ------------------------------

from typing import Any, Optional


class ValuationError(Exception):
    """Base class for every error raised by the services."""


# :::::: Exact Arithmetic :::::: #

class LevelTooSmall(ValuationError):
    """A dyadic (or word) does not fit at the requested level."""


class DyadicOverflow(ValuationError):
    """An exponent grew beyond MAX_DYADIC_EXPONENT."""


class NonDyadicWeight(ValuationError):
    """A weight is not a Dyadic."""


# :::::: Posets :::::: #

class CycleDetected(ValuationError):
    """The cover pairs do not describe an antisymmetric relation."""


class UnknownIdentifier(ValuationError):
    pass


class DuplicateIdentifier(ValuationError):
    pass


class BottomNotLeast(ValuationError):
    pass


class SizeLimit(ValuationError):
    """An exhaustive enumeration was asked for on a poset above the configured bound."""


class NotBoundedComplete(ValuationError):
    pass


# :::::: Valuations & Transport :::::: #

class ForeignUpperSet(ValuationError):
    pass


class DifferentPosets(ValuationError):
    pass


class NotMonotone(ValuationError):
    pass


class MissingValue(ValuationError):
    pass


class NotAChain(ValuationError):
    """A consecutive pair of a chain fails the valuation order."""

    def __init__(self, message: str, position: int, witness: Any = None):
        super().__init__(message)
        self.position = position
        self.witness = witness


# :::::: Cantor Tree :::::: #

class LevelMismatch(ValuationError):
    pass


class DepthTooSmall(ValuationError):
    pass


class OutOfRange(ValuationError):
    pass


# :::::: Inputs :::::: #

class InvariantViolation(ValuationError):
    """An input object breaks a named invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant
        self.detail = detail


class ParseError(ValuationError):
    """A document could not be read; `field` names where."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class InputError(ValuationError):
    """An input or output path could not be read or written."""
