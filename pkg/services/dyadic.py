# ------------------------------
# Module: dyadic.py
# Description: Exact dyadic rationals k/2^m, the number type of every mass and capacity
# ------------------------------

import logging
import re
from typing import Iterable, Union

from services.constants import MAX_DYADIC_EXPONENT
from services.errors import DyadicOverflow, LevelTooSmall, ParseError

logger = logging.getLogger(__name__)

DyadicLike = Union["Dyadic", int]

_DYADIC_TEXT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")


class Dyadic:
    """
    Exact value numerator / 2^exponent.

    Always stored normalized: the numerator is odd whenever the exponent is
    positive, and zero is (0, 0). Arithmetic mixes freely with ints.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if exponent < 0:
            raise ValueError(f"Dyadic exponent must be non-negative, got {exponent}")
        if numerator == 0:
            exponent = 0
        elif exponent > 0:
            shift = min((numerator & -numerator).bit_length() - 1, exponent)
            numerator >>= shift
            exponent -= shift
        if exponent > MAX_DYADIC_EXPONENT:
            raise DyadicOverflow(f"exponent {exponent} exceeds the limit {MAX_DYADIC_EXPONENT}")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def half_power(cls, m: int) -> "Dyadic":
        """1/2^m"""
        return cls(1, m)

    # :::::: Arithmetic :::::: #

    def __add__(self, other: DyadicLike) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        return Dyadic((self.numerator << (e - self.exponent)) + (other.numerator << (e - other.exponent)), e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __sub__(self, other: DyadicLike) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: DyadicLike) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: DyadicLike) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __abs__(self) -> "Dyadic":
        return self if self.numerator >= 0 else -self

    # :::::: Ordering :::::: #

    def _cmp(self, other: "Dyadic") -> int:
        e = max(self.exponent, other.exponent)
        a = self.numerator << (e - self.exponent)
        b = other.numerator << (e - other.exponent)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        # Integral values hash like the int they equal
        if self.exponent == 0:
            return hash(self.numerator)
        return hash((self.numerator, self.exponent))

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __float__(self) -> float:
        return self.numerator / (1 << self.exponent)

    # :::::: Text :::::: #

    def __str__(self) -> str:
        return format_dyadic(self)

    def __repr__(self) -> str:
        return f"Dyadic({format_dyadic(self)})"

    def __reduce__(self):
        return (Dyadic, (self.numerator, self.exponent))


def _coerce(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Dyadic(value, 0)
    return NotImplemented


ZERO = Dyadic(0)
ONE = Dyadic(1)


def dyadic_normalize(numerator: int, exponent: int) -> Dyadic:
    '''
      Normalized representation of numerator/2^exponent.

      Args:
          numerator: any integer
          exponent: non-negative integer

      Returns:
          Dyadic
    '''
    return Dyadic(numerator, exponent)


def dyadic_arith(kind: str, a: Dyadic, b: Dyadic):
    '''
      Dispatch one of add | sub | mul | cmp on two dyadics.

      Returns:
          a Dyadic for add/sub/mul, and "less" / "equal" / "greater" for cmp
    '''
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "cmp":
        return {-1: "less", 0: "equal", 1: "greater"}[a._cmp(_coerce(b))]
    raise ValueError(f"Unknown dyadic operation: {kind}")


def rescale_to_level(a: DyadicLike, m: int) -> int:
    '''
      Numerator of a over the denominator 2^m.

      Raises:
          LevelTooSmall: when a has no representation with denominator 2^m
    '''
    a = _coerce(a)
    if a.exponent > m:
        raise LevelTooSmall(f"{format_dyadic(a)} has no denominator 2^{m}")
    return a.numerator << (m - a.exponent)


def max_exponent(values: Iterable[DyadicLike]) -> int:
    """Largest exponent among the values, 0 for none."""
    return max((_coerce(v).exponent for v in values), default=0)


def total(values: Iterable[DyadicLike]) -> Dyadic:
    result = ZERO
    for v in values:
        result = result + v
    return result


def format_dyadic(a: DyadicLike) -> str:
    """Text form "k/N" with N = 2^m; integers print bare ("0", "1")."""
    a = _coerce(a)
    if a.exponent == 0:
        return str(a.numerator)
    return f"{a.numerator}/{1 << a.exponent}"


def parse_dyadic(text, field: str = None) -> Dyadic:
    '''
      Parse "k/N" (N a power of two), "k/2^m" or an integer.

      Args:
          text: the string (ints and Dyadics pass through)
          field: name reported in ParseError

      Returns:
          Dyadic
    '''
    if isinstance(text, Dyadic):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Dyadic(text)
    if not isinstance(text, str):
        raise ParseError(f"Expected dyadic text, got {type(text).__name__}", field=field)

    match = _DYADIC_TEXT.match(text)
    if not match:
        raise ParseError(f"Not a dyadic rational: '{text}'", field=field)
    numerator = int(match.group(1))
    if match.group(2) is not None:
        return Dyadic(numerator, int(match.group(2)))
    if match.group(3) is not None:
        denominator = int(match.group(3))
        if denominator <= 0 or denominator & (denominator - 1):
            raise ParseError(f"Denominator of '{text}' is not a power of two", field=field)
        return Dyadic(numerator, denominator.bit_length() - 1)
    return Dyadic(numerator)
