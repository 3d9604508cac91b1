# ------------------------------
# Module: cantor.py
# Description: Truncated Cantor tree: words, level antichains, partial tree maps and
#              counting measures
# ------------------------------

import bisect
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from services.dyadic import ZERO, Dyadic
from services.errors import (
    DifferentPosets,
    InvariantViolation,
    LevelMismatch,
    LevelTooSmall,
    ParseError,
    UnknownIdentifier,
)
from services.poset import FinitePoset, same_poset
from services.valuation import SimpleValuation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Word:
    """A finite bit string; the prefix order is the tree order."""
    bits: str = ""

    def __post_init__(self):
        if any(b not in "01" for b in self.bits):
            raise ParseError(f"Word '{self.bits}' contains characters other than 0 and 1")

    @property
    def level(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        """Position of the word in the lexicographic order of its level."""
        return int(self.bits, 2) if self.bits else 0

    @classmethod
    def from_index(cls, index: int, level: int) -> "Word":
        if level == 0:
            return cls("")
        return cls(format(index, f"0{level}b"))

    def is_prefix_of(self, other: "Word") -> bool:
        return other.bits.startswith(self.bits)

    def __str__(self) -> str:
        return self.bits

    def __len__(self) -> int:
        return len(self.bits)


def project(word: Word, n: int) -> Word:
    """Largest prefix of the word at level <= n."""
    return Word(word.bits[:n])


def embed(word: Word, target_level: int) -> Word:
    '''
      Pad with zeros up to target_level; a section of project.

      Raises:
          LevelTooSmall: when the word is longer than target_level
    '''
    if target_level < word.level:
        raise LevelTooSmall(f"Cannot embed a level-{word.level} word at level {target_level}")
    return Word(word.bits + "0" * (target_level - word.level))


@dataclass(frozen=True)
class LevelAntichain:
    """The words of one level C_n, indexed 0 .. 2^n - 1 in lexicographic order."""
    level: int

    @property
    def members(self) -> List[Word]:
        return [Word.from_index(i, self.level) for i in range(len(self))]

    def __len__(self) -> int:
        return 1 << self.level

    def __contains__(self, word) -> bool:
        return isinstance(word, Word) and word.level == self.level


def level_words(n: int) -> List[Word]:
    """All 2^n words of length n in lexicographic order."""
    return LevelAntichain(n).members


@dataclass(frozen=True)
class CountingMeasure:
    """Normalized counting measure on the level antichain C_n."""
    level: int

    @property
    def per_word_mass(self) -> Dyadic:
        return Dyadic.half_power(self.level)

    def mass(self, words: Iterable[Word]) -> Dyadic:
        count = len({w for w in words if w.level == self.level})
        return Dyadic(count, self.level)

    def cylinder_mass(self, prefix: Word, depth: Optional[int] = None) -> Dyadic:
        '''
          Mass of the words extending prefix, counted at depth d (default: this level).
        '''
        depth = self.level if depth is None else depth
        if prefix.level > depth:
            raise LevelTooSmall(f"Cylinder {prefix} is below depth {depth}")
        return Dyadic(1 << (depth - prefix.level), depth)


def projected_counting(depth: int, n: int) -> Dict[Word, Dyadic]:
    """Push the depth-d counting measure down to level n by projection."""
    masses: Dict[Word, Dyadic] = {}
    step = Dyadic.half_power(depth)
    for w in level_words(depth):
        p = project(w, n)
        masses[p] = masses.get(p, ZERO) + step
    return masses


# :::::: Partial tree maps :::::: #

@dataclass(frozen=True)
class Interval:
    """Words [lo, hi) of one level, all sent to image."""
    lo: int
    hi: int
    image: str

    def __len__(self) -> int:
        return self.hi - self.lo


class PartialTreeMap:
    """
    A partial map from the level antichain C_m into a poset, constant on each
    of a list of disjoint lexicographic intervals.
    """

    def __init__(self, poset: FinitePoset, level: int, intervals: Iterable[Interval]):
        self.poset = poset
        self.level = level
        self.antichain = LevelAntichain(level)
        size = len(self.antichain)
        pieces = sorted((iv for iv in intervals if iv.hi > iv.lo), key=lambda iv: iv.lo)
        merged: List[Interval] = []
        for iv in pieces:
            if iv.image not in poset:
                raise UnknownIdentifier(f"Partial map sends words to unknown element '{iv.image}'")
            if iv.lo < 0 or iv.hi > size:
                raise InvariantViolation("dom ⊆ C_m", f"interval [{iv.lo}, {iv.hi}) leaves level {level}")
            if merged and iv.lo < merged[-1].hi:
                raise InvariantViolation("intervals disjoint", f"[{iv.lo}, {iv.hi}) overlaps [{merged[-1].lo}, {merged[-1].hi})")
            if merged and merged[-1].hi == iv.lo and merged[-1].image == iv.image:
                merged[-1] = Interval(merged[-1].lo, iv.hi, iv.image)
            else:
                merged.append(iv)
        self.intervals: Tuple[Interval, ...] = tuple(merged)
        self._starts = [iv.lo for iv in merged]

    @classmethod
    def from_assignment(cls, poset: FinitePoset, level: int, assignment: Mapping[Word, str]) -> "PartialTreeMap":
        pieces = []
        for word, image in assignment.items():
            if word.level != level:
                raise LevelMismatch(f"Word {word} is not at level {level}")
            pieces.append(Interval(word.index, word.index + 1, image))
        return cls(poset, level, pieces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialTreeMap):
            return NotImplemented
        return (self.level == other.level and self.intervals == other.intervals
                and same_poset(self.poset, other.poset))

    def __repr__(self) -> str:
        body = ", ".join(f"[{iv.lo},{iv.hi})->{iv.image}" for iv in self.intervals)
        return f"PartialTreeMap(level={self.level}, {body})"

    def _interval_at(self, index: int) -> Optional[Interval]:
        i = bisect.bisect_right(self._starts, index) - 1
        if i >= 0 and index < self.intervals[i].hi:
            return self.intervals[i]
        return None

    def value(self, word: Word) -> Optional[str]:
        """Image of a level-m word, None outside the domain."""
        if word.level != self.level:
            raise LevelMismatch(f"Word {word} is not at level {self.level}")
        iv = self._interval_at(word.index)
        return iv.image if iv is not None else None

    def __contains__(self, word: Word) -> bool:
        return word.level == self.level and self._interval_at(word.index) is not None

    def domain_size(self) -> int:
        return sum(len(iv) for iv in self.intervals)

    def domain_words(self) -> List[Word]:
        return [Word.from_index(i, self.level) for iv in self.intervals for i in range(iv.lo, iv.hi)]

    def assignment(self) -> Dict[Word, str]:
        return {Word.from_index(i, self.level): iv.image for iv in self.intervals for i in range(iv.lo, iv.hi)}

    def images_between(self, lo: int, hi: int) -> List[str]:
        """Images of the domain words in [lo, hi)."""
        return [iv.image for iv in self.intervals if iv.lo < hi and lo < iv.hi]

    def covers(self, lo: int, hi: int) -> bool:
        """Whether every word in [lo, hi) is in the domain."""
        position = lo
        for iv in self.intervals:
            if iv.hi <= position:
                continue
            if iv.lo > position:
                return False
            position = iv.hi
            if position >= hi:
                return True
        return position >= hi

    def to_json(self) -> List[dict]:
        return [{"interval": [iv.lo, iv.hi], "level": self.level, "image": iv.image} for iv in self.intervals]

    @classmethod
    def from_json(cls, poset: FinitePoset, level: int, document: List[dict]) -> "PartialTreeMap":
        pieces = []
        for i, item in enumerate(document):
            try:
                lo, hi = item["interval"]
                image = str(item["image"])
            except (KeyError, TypeError, ValueError):
                raise ParseError("Interval entries need 'interval': [lo, hi) and 'image'", field=f"intervals[{i}]")
            if not all(isinstance(b, int) and not isinstance(b, bool) for b in (lo, hi)):
                raise ParseError(f"Interval bounds must be integers, got [{lo!r}, {hi!r}]", field=f"intervals[{i}]")
            if item.get("level", level) != level:
                raise ParseError(f"Interval level {item.get('level')} differs from map level {level}", field=f"intervals[{i}]")
            pieces.append(Interval(lo, hi, image))
        return cls(poset, level, pieces)


# :::::: Operations :::::: #

def pushforward(f: PartialTreeMap) -> SimpleValuation:
    """Image of the level counting measure under f, exact."""
    counts: Dict[str, int] = {}
    for iv in f.intervals:
        counts[iv.image] = counts.get(iv.image, 0) + len(iv)
    return SimpleValuation(f.poset, {x: Dyadic(c, f.level) for x, c in counts.items()})


def _uncovered_gaps(g: PartialTreeMap) -> List[Tuple[int, int]]:
    gaps = []
    position = 0
    for iv in g.intervals:
        if iv.lo > position:
            gaps.append((position, iv.lo))
        position = iv.hi
    if position < len(g.antichain):
        gaps.append((position, len(g.antichain)))
    return gaps


def partial_map_leq(f: PartialTreeMap, g: PartialTreeMap) -> bool:
    '''
      The partial-map order: dom f ⊆ ↓dom g and f ∘ project <= g.

      Raises:
          LevelMismatch: when f sits below g's level
    '''
    if f.level > g.level:
        raise LevelMismatch(f"Left map is at level {f.level}, right map at level {g.level}")
    if not same_poset(f.poset, g.poset):
        raise DifferentPosets("Partial maps target different posets")
    shift = g.level - f.level

    # Images along every overlap of a scaled f-interval with a g-interval
    for fi in f.intervals:
        lo, hi = fi.lo << shift, fi.hi << shift
        for image in g.images_between(lo, hi):
            if not f.poset.leq(fi.image, image):
                return False

    # A word of dom f whose whole block falls in a gap of dom g has no extension
    for gap_lo, gap_hi in _uncovered_gaps(g):
        first = -(-gap_lo >> shift)
        last = gap_hi >> shift
        for fi in f.intervals:
            if max(first, fi.lo) < min(last, fi.hi):
                return False
    return True


def covers_domain(f: PartialTreeMap, g: PartialTreeMap) -> bool:
    """Whether every level(g) word above dom f lies in dom g."""
    if f.level > g.level:
        raise LevelMismatch(f"Left map is at level {f.level}, right map at level {g.level}")
    shift = g.level - f.level
    return all(g.covers(fi.lo << shift, fi.hi << shift) for fi in f.intervals)
