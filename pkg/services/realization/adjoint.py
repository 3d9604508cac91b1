# ------------------------------
# Module: adjoint.py
# Description: The lower adjoint of the Cantor-to-unit-interval map, its push-forward
#              check, and the Skorohod composition on the dyadic grid
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from services.cantor import Word, project
from services.dyadic import ONE, ZERO, Dyadic, format_dyadic
from services.errors import DepthTooSmall, OutOfRange
from services.realization.chain import RealizationResult, evaluate_limit
from services.valuation import SimpleValuation

logger = logging.getLogger(__name__)


def unit_adjoint(r: Dyadic, depth: int) -> Word:
    '''
      Depth-d truncation of j(r), the lexicographically least infinite word whose
      binary value is >= r.

      j(0) = 0^ω; for r = 0.b_1...b_{e-1}1, j(r) = b_1...b_{e-1} 0 1^ω.

      Raises:
          OutOfRange: when r is outside [0, 1] or needs more than depth bits
    '''
    if r < 0 or r > 1:
        raise OutOfRange(f"{format_dyadic(r)} is outside [0, 1]")
    if r.exponent > depth:
        raise OutOfRange(f"{format_dyadic(r)} needs depth >= {r.exponent}, got {depth}")
    if r == 0:
        return Word("0" * depth)
    if r == 1:
        return Word("1" * depth)
    bits = format(r.numerator, f"0{r.exponent}b")
    return Word(bits[:-1] + "0" + "1" * (depth - r.exponent))


def cantor_value(word: Word, tail: int = 0) -> Dyadic:
    """Binary value of the word followed by tail^ω."""
    value = Dyadic(word.index, word.level)
    if tail:
        value = value + Dyadic.half_power(word.level)
    return value


def adjoint_value(r: Dyadic, depth: int) -> Dyadic:
    """π(j(r)) read at depth d: the truncation completed by its own tail (1^ω unless r = 0)."""
    return cantor_value(unit_adjoint(r, depth), tail=0 if r == 0 else 1)


def grid_cells(depth: int) -> List[Tuple[Dyadic, Dyadic, Word]]:
    """Cells ((k-1)/2^d, k/2^d] with the constant depth-d value of j on each."""
    return [
        (Dyadic(k - 1, depth), Dyadic(k, depth), unit_adjoint(Dyadic(k, depth), depth))
        for k in range(1, (1 << depth) + 1)
    ]


@dataclass
class CylinderRecord:
    prefix: Word
    lo: Dyadic
    hi: Dyadic
    length: Dyadic
    expected: Dyadic

    @property
    def contiguous(self) -> bool:
        return self.hi - self.lo == self.length

    @property
    def passes(self) -> bool:
        return self.contiguous and self.length == self.expected

    def to_dict(self) -> dict:
        return {
            "prefix": self.prefix.bits,
            "interval": [format_dyadic(self.lo), format_dyadic(self.hi)],
            "length": format_dyadic(self.length),
            "expected": format_dyadic(self.expected),
        }


@dataclass
class CylinderCheck:
    depth: int
    passes: bool
    cylinders: List[CylinderRecord] = field(default_factory=list)
    witness: Optional[CylinderRecord] = None
    non_constant_cells: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "passes": self.passes,
            "cylinders_checked": len(self.cylinders),
            "witness": self.witness.to_dict() if self.witness else None,
            "non_constant_cells": list(self.non_constant_cells),
        }


def cylinder_pushforward_check(depth: int) -> CylinderCheck:
    '''
      Lebesgue measure of {r : j(r) extends p} against ν_C(p) = 1/2^n, for every
      prefix p of length n <= d.

      Preimages are unions of grid cells ((k-1)/2^d, k/2^d]; each cell is sampled at
      its midpoint one level deeper to confirm j is constant on it.
    '''
    if depth < 1:
        raise DepthTooSmall("cylinder check needs depth >= 1")
    cells = grid_cells(depth)

    non_constant = []
    for k, (lo, hi, word) in enumerate(cells, start=1):
        midpoint = Dyadic(2 * k - 1, depth + 1)
        if project(unit_adjoint(midpoint, depth + 1), depth) != word:
            non_constant.append(k)

    check = CylinderCheck(depth=depth, passes=not non_constant, non_constant_cells=non_constant)
    for n in range(depth + 1):
        grouped: Dict[str, List[Tuple[Dyadic, Dyadic]]] = {}
        for lo, hi, word in cells:
            grouped.setdefault(word.bits[:n], []).append((lo, hi))
        for index in range(1 << n):
            prefix = Word.from_index(index, n)
            pieces = grouped.get(prefix.bits, [])
            length = ZERO
            for lo, hi in pieces:
                length = length + (hi - lo)
            record = CylinderRecord(
                prefix=prefix,
                lo=min((lo for lo, _ in pieces), default=ZERO),
                hi=max((hi for _, hi in pieces), default=ZERO),
                length=length,
                expected=Dyadic.half_power(n),
            )
            check.cylinders.append(record)
            if not record.passes and check.witness is None:
                check.witness = record
                check.passes = False
    return check


# :::::: Skorohod :::::: #

def skorohod_compose(result: RealizationResult, r: Dyadic, depth: int) -> Optional[str]:
    '''
      X(r) = f(j(r)): the realized limit map read at the adjoint of r.

      Raises:
          DepthTooSmall: when depth is below the realization's top level
    '''
    if depth < result.top_level:
        raise DepthTooSmall(f"depth {depth} is below the top level {result.top_level}")
    return evaluate_limit(result, unit_adjoint(r, depth))


@dataclass
class GridPushforward:
    measure: SimpleValuation
    undefined_mass: Dyadic


def grid_pushforward(result: RealizationResult, depth: int) -> GridPushforward:
    """Push the uniform weight of the cells ((k-1)/2^d, k/2^d] through X."""
    counts: Dict[str, int] = {}
    undefined = 0
    for k in range(1, (1 << depth) + 1):
        value = skorohod_compose(result, Dyadic(k, depth), depth)
        if value is None:
            undefined += 1
        else:
            counts[value] = counts.get(value, 0) + 1
    measure = SimpleValuation(result.poset, {x: Dyadic(c, depth) for x, c in counts.items()})
    return GridPushforward(measure=measure, undefined_mass=Dyadic(undefined, depth))


def adjunction_holds(r: Dyadic, word: Word) -> bool:
    """j(r) <= c iff r <= π(c), for c the word followed by 0^ω."""
    depth = max(word.level, r.exponent)
    truncated = unit_adjoint(r, depth)
    padded = Word(word.bits + "0" * (depth - word.level))
    # Past the truncation j(r) continues with 0^ω only for r = 0
    below = truncated < padded or (truncated == padded and r == 0)
    return below == (r <= cantor_value(word, tail=0))
