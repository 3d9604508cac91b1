# ------------------------------
# Module: poset.py
# Description: Finite posets standing for truncated domain bases
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from services.constants import ENUMERATION_LIMIT
from services.errors import (
    BottomNotLeast,
    CycleDetected,
    DuplicateIdentifier,
    InvariantViolation,
    SizeLimit,
    UnknownIdentifier,
)

logger = logging.getLogger(__name__)


class FinitePoset:
    """
    A finite partial order with a fixed enumeration order of its elements.

    The order is the reflexive-transitive closure of the cover pairs. The
    way-below relation defaults to the order itself; a user-supplied one is
    closed under absorption (x' <= x << y <= y' gives x' << y').
    """

    def __init__(self, elements: Sequence[str], cover_pairs: Iterable[Tuple[str, str]] = (),
                 bottom: Optional[str] = None, waybelow_pairs: Optional[Iterable[Tuple[str, str]]] = None):
        elements = [str(x) for x in elements]
        seen = set()
        for x in elements:
            if x in seen:
                raise DuplicateIdentifier(f"Element '{x}' is listed twice")
            seen.add(x)

        self.elements: Tuple[str, ...] = tuple(elements)
        self.index: Dict[str, int] = {x: i for i, x in enumerate(elements)}

        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        for lower, upper in cover_pairs:
            lower, upper = str(lower), str(upper)
            self._check_known(lower)
            self._check_known(upper)
            if lower != upper:
                graph.add_edge(lower, upper)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise CycleDetected(f"Cover pairs are not antisymmetric: {cycle}")
        self.graph = graph

        closure = nx.transitive_closure_dag(graph)
        self._up: Dict[str, FrozenSet[str]] = {
            x: frozenset(closure.successors(x)) | {x} for x in elements
        }
        self._down: Dict[str, FrozenSet[str]] = {
            x: frozenset(closure.predecessors(x)) | {x} for x in elements
        }

        if bottom is not None:
            bottom = str(bottom)
            self._check_known(bottom)
            if len(self._up[bottom]) != len(elements):
                raise BottomNotLeast(f"'{bottom}' is not below every element")
        self.bottom: Optional[str] = bottom

        self.waybelow_given = waybelow_pairs is not None
        if waybelow_pairs is None:
            self._waybelow_up = self._up
        else:
            self._waybelow_up = self._absorb_waybelow(waybelow_pairs)

        self._upper_sets: Optional[Tuple["UpperSet", ...]] = None

    def _check_known(self, x: str):
        if x not in self.index:
            raise UnknownIdentifier(f"Unknown element '{x}'")

    def _absorb_waybelow(self, pairs) -> Dict[str, FrozenSet[str]]:
        generators = {x: set() for x in self.elements}
        for lower, upper in pairs:
            lower, upper = str(lower), str(upper)
            self._check_known(lower)
            self._check_known(upper)
            if not self.leq(lower, upper):
                raise InvariantViolation("waybelow ⊆ leq", f"'{lower}' << '{upper}' but '{lower}' is not below '{upper}'")
            generators[lower].add(upper)
        result = {}
        for x in self.elements:
            above = set()
            for y in self._up[x]:
                for z in generators[y]:
                    above |= self._up[z]
            result[x] = frozenset(above)
        return result

    # :::::: Order :::::: #

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return (self.elements == other.elements and self._up == other._up
                and self.bottom == other.bottom and self._waybelow_up == other._waybelow_up)

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.elements)})"

    def leq(self, x: str, y: str) -> bool:
        return y in self._up[x]

    def lt(self, x: str, y: str) -> bool:
        return x != y and y in self._up[x]

    def waybelow(self, x: str, y: str) -> bool:
        return y in self._waybelow_up[x]

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def up(self, x: str) -> FrozenSet[str]:
        return self._up[x]

    def down(self, x: str) -> FrozenSet[str]:
        return self._down[x]

    def up_closure(self, subset: Iterable[str]) -> FrozenSet[str]:
        result = set()
        for x in subset:
            result |= self._up[x]
        return frozenset(result)

    def down_closure(self, subset: Iterable[str]) -> FrozenSet[str]:
        result = set()
        for x in subset:
            result |= self._down[x]
        return frozenset(result)

    def ordered(self, subset: Iterable[str]) -> List[str]:
        """Members of subset in enumeration order."""
        return sorted(subset, key=self.index.__getitem__)

    def least_element(self) -> Optional[str]:
        if self.bottom is not None:
            return self.bottom
        for x in self.elements:
            if len(self._up[x]) == len(self.elements):
                return x
        return None

    def minimal_elements(self, subset: Iterable[str]) -> List[str]:
        subset = set(subset)
        return self.ordered(x for x in subset if not any(self.lt(y, x) for y in subset))

    def maximal_elements(self, subset: Iterable[str]) -> List[str]:
        subset = set(subset)
        return self.ordered(x for x in subset if not any(self.lt(x, y) for y in subset))

    def linear_extension(self) -> List[str]:
        """Bottom-up topological order, ties broken by enumeration order."""
        return list(nx.lexicographical_topological_sort(self.graph, key=self.index.__getitem__))

    def hasse_pairs(self) -> List[Tuple[str, str]]:
        reduction = nx.transitive_reduction(self.graph)
        return sorted(reduction.edges(), key=lambda e: (self.index[e[0]], self.index[e[1]]))

    def waybelow_pairs(self) -> List[Tuple[str, str]]:
        return [(x, y) for x in self.elements for y in self.ordered(self._waybelow_up[x])]

    def upper_set(self, members: Iterable[str]) -> "UpperSet":
        members = frozenset(members)
        for x in members:
            self._check_known(x)
        if self.up_closure(members) != members:
            raise InvariantViolation("upward closed", f"{self.ordered(members)} is not an upper set")
        return UpperSet(members=members, poset=self)

    def principal(self, x: str) -> "UpperSet":
        return UpperSet(members=self._up[x], poset=self)

    def to_document(self) -> dict:
        document = {
            "elements": list(self.elements),
            "covers": [list(pair) for pair in self.hasse_pairs()],
        }
        if self.bottom is not None:
            document["bottom"] = self.bottom
        if self.waybelow_given:
            document["waybelow"] = [list(pair) for pair in self.waybelow_pairs()]
        return document


def same_poset(p: FinitePoset, q: FinitePoset) -> bool:
    return p is q or p == q


@dataclass(frozen=True)
class UpperSet:
    """An upward-closed subset of a poset."""
    members: FrozenSet[str]
    poset: FinitePoset = field(compare=False, repr=False)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.poset.ordered(self.members))

    def union(self, other: "UpperSet") -> "UpperSet":
        return UpperSet(members=self.members | other.members, poset=self.poset)

    def intersection(self, other: "UpperSet") -> "UpperSet":
        return UpperSet(members=self.members & other.members, poset=self.poset)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.members), tuple(sorted(self.poset.index[x] for x in self.members)))

    def to_list(self) -> List[str]:
        return self.poset.ordered(self.members)


# :::::: Operations :::::: #

def build_poset(elements: Sequence[str], cover_pairs: Iterable[Tuple[str, str]] = (),
                bottom: Optional[str] = None, waybelow_pairs: Optional[Iterable[Tuple[str, str]]] = None) -> FinitePoset:
    '''
      Build and validate a finite poset.

      Args:
          elements: identifiers in enumeration order
          cover_pairs: (lower, upper) pairs; the order is their reflexive-transitive closure
          bottom: optional declared least element
          waybelow_pairs: optional way-below generators, defaults to the order

      Returns:
          FinitePoset
    '''
    poset = FinitePoset(elements, cover_pairs, bottom=bottom, waybelow_pairs=waybelow_pairs)
    logger.debug(f"Built poset with {len(poset)} elements and {poset.graph.number_of_edges()} cover pairs")
    return poset


def enumerate_upper_sets(poset: FinitePoset, limit: int = None) -> List[UpperSet]:
    '''
      All upper sets of the poset, each once, sorted by (size, member indices).

      Raises:
          SizeLimit: when the poset has more elements than the enumeration bound
    '''
    limit = ENUMERATION_LIMIT if limit is None else limit
    if len(poset) > limit:
        raise SizeLimit(f"Poset has {len(poset)} elements, enumeration is limited to {limit}")
    if poset._upper_sets is not None:
        return list(poset._upper_sets)

    top_down = list(reversed(poset.linear_extension()))
    found = []

    def extend(i: int, chosen: FrozenSet[str]):
        if i == len(top_down):
            found.append(UpperSet(members=chosen, poset=poset))
            return
        x = top_down[i]
        extend(i + 1, chosen)
        # Every strict upper bound of x was decided earlier
        if poset.up(x) - {x} <= chosen:
            extend(i + 1, chosen | {x})

    extend(0, frozenset())
    found.sort(key=UpperSet.sort_key)
    poset._upper_sets = tuple(found)
    return found


def infimum(poset: FinitePoset, subset: Iterable[str]) -> Optional[str]:
    """Greatest lower bound of a non-empty subset, or None when it does not exist."""
    subset = list(subset)
    if not subset:
        raise ValueError("infimum needs a non-empty subset")
    lower = set(poset.down(subset[0]))
    for x in subset[1:]:
        lower &= poset.down(x)
    # In a finite set a unique maximal element is the greatest one
    tops = poset.maximal_elements(lower)
    return tops[0] if len(tops) == 1 else None


def supremum(poset: FinitePoset, subset: Iterable[str]) -> Optional[str]:
    """Least upper bound of a non-empty subset, or None when it does not exist."""
    subset = list(subset)
    if not subset:
        raise ValueError("supremum needs a non-empty subset")
    upper = set(poset.up(subset[0]))
    for x in subset[1:]:
        upper &= poset.up(x)
    bottoms = poset.minimal_elements(upper)
    return bottoms[0] if len(bottoms) == 1 else None


@dataclass
class PosetFlags:
    is_chain: bool
    is_bounded_complete: bool
    has_bottom: bool
    is_flat: bool
    waybelow_is_leq: bool

    def to_dict(self) -> dict:
        return {
            "is_chain": self.is_chain,
            "is_bounded_complete": self.is_bounded_complete,
            "has_bottom": self.has_bottom,
            "is_flat": self.is_flat,
            "waybelow_is_leq": self.waybelow_is_leq,
        }


def classify(poset: FinitePoset) -> PosetFlags:
    '''
      Structural flags of a poset.

      Bounded completeness is decided on pairs: on a finite poset every
      non-empty subset has an infimum iff every pair does.
    '''
    elements = poset.elements
    is_chain = all(poset.comparable(x, y) for i, x in enumerate(elements) for y in elements[i + 1:])
    is_bounded_complete = len(elements) > 0 and all(
        infimum(poset, [x, y]) is not None for i, x in enumerate(elements) for y in elements[i + 1:]
    )
    least = poset.least_element()
    has_bottom = least is not None
    rest = [x for x in elements if x != least]
    is_flat = has_bottom and len(rest) > 0 and not any(
        poset.comparable(x, y) for i, x in enumerate(rest) for y in rest[i + 1:]
    )
    return PosetFlags(
        is_chain=is_chain,
        is_bounded_complete=is_bounded_complete,
        has_bottom=has_bottom,
        is_flat=is_flat,
        waybelow_is_leq=poset._waybelow_up == poset._up,
    )
