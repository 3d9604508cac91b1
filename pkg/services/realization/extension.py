# ------------------------------
# Module: extension.py
# Description: Scott-continuous extension of a partial tree map to the whole truncated tree
# ------------------------------

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from services.cantor import PartialTreeMap, Word, project
from services.errors import DifferentPosets, NotBoundedComplete
from services.poset import FinitePoset, classify, infimum, same_poset

logger = logging.getLogger(__name__)


@dataclass
class ScottExtension:
    '''
      f~(x) = inf f(↑x ∩ C_m) when ↑x ∩ C_m ⊆ dom f, bottom otherwise;
      words below level m are projected first.
    '''
    f: PartialTreeMap
    bottom: str

    @property
    def level(self) -> int:
        return self.f.level

    def value(self, word: Word) -> str:
        if word.level > self.level:
            word = project(word, self.level)
        shift = self.level - word.level
        lo, hi = word.index << shift, (word.index + 1) << shift
        if not self.f.covers(lo, hi):
            return self.bottom
        return infimum(self.f.poset, set(self.f.images_between(lo, hi)))

    def table(self, up_to_level: int = None) -> Dict[Word, str]:
        """Values on every word of length <= up_to_level (default: the map's level)."""
        up_to_level = self.level if up_to_level is None else up_to_level
        return {
            Word.from_index(i, n): self.value(Word.from_index(i, n))
            for n in range(up_to_level + 1)
            for i in range(1 << n)
        }

    def to_json(self) -> Dict[str, str]:
        return {w.bits: x for w, x in self.table().items()}


def scott_extend(f: PartialTreeMap, poset: FinitePoset = None) -> ScottExtension:
    '''
      Extend a partial map into a bounded-complete poset with bottom.

      Args:
          f: the partial map
          poset: its target, defaults to f.poset

      Raises:
          NotBoundedComplete: when the target lacks a bottom or some infimum
    '''
    if poset is not None and not same_poset(poset, f.poset):
        raise DifferentPosets("Partial map targets a different poset")
    flags = classify(f.poset)
    if not (flags.is_bounded_complete and flags.has_bottom):
        raise NotBoundedComplete("Scott extension needs a bounded-complete target with a bottom")
    return ScottExtension(f=f, bottom=f.poset.least_element())


def restriction_mismatches(extension: ScottExtension) -> List[Word]:
    """Domain words where the extension differs from the map."""
    return [w for w, x in extension.f.assignment().items() if extension.value(w) != x]


def monotonicity_violations(extension: ScottExtension, up_to_level: int = None) -> List[Tuple[Word, Word]]:
    """Pairs parent < child of the prefix order where the extension decreases."""
    table = extension.table(up_to_level)
    poset = extension.f.poset
    violations = []
    for word, value in table.items():
        for bit in "01":
            child = Word(word.bits + bit)
            if child in table and not poset.leq(value, table[child]):
                violations.append((word, child))
    return violations


def extension_leq(smaller: ScottExtension, larger: ScottExtension, up_to_level: int = None) -> List[Word]:
    '''
      Words of length <= up_to_level where smaller~ is not below larger~.

      Holds when larger's domain covers every word above smaller's domain with
      images above; the weaker partial-map order alone does not guarantee it.
    '''
    up_to_level = max(smaller.level, larger.level) if up_to_level is None else up_to_level
    poset = smaller.f.poset
    return [
        w for w in (Word.from_index(i, n) for n in range(up_to_level + 1) for i in range(1 << n))
        if not poset.leq(smaller.value(w), larger.value(w))
    ]
