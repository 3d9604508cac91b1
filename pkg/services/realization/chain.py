# ------------------------------
# Module: chain.py
# Description: Realize an increasing chain of simple valuations as an increasing chain of
#              partial maps on the Cantor tree, and evaluate the limit map
# ------------------------------

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from services.cantor import Interval, PartialTreeMap, Word, partial_map_leq, project, pushforward
from services.dyadic import Dyadic, max_exponent, rescale_to_level
from services.errors import DepthTooSmall, DifferentPosets, InvariantViolation, NonDyadicWeight, NotAChain, ParseError
from services.poset import FinitePoset, same_poset, supremum
from services.transport.maxflow import decide_order_maxflow
from services.transport.plan import TransportPlan
from services.valuation import SimpleValuation

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass
class RealizationResult:
    """Levels m_1 < ... < m_k, one partial map per level and the plans joining consecutive measures."""
    poset: FinitePoset
    levels: List[int]
    maps: List[PartialTreeMap]
    plans: List[TransportPlan] = field(default_factory=list)

    @property
    def top_level(self) -> int:
        return self.levels[-1]

    def to_json(self) -> dict:
        return {
            "levels": list(self.levels),
            "maps": [f.to_json() for f in self.maps],
            "plans": [p.to_json() for p in self.plans],
        }

    @classmethod
    def from_json(cls, poset: FinitePoset, document: dict) -> "RealizationResult":
        try:
            levels = [int(m) for m in document["levels"]]
            maps = [PartialTreeMap.from_json(poset, m, items) for m, items in zip(levels, document["maps"])]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed realization: {e}", field="realization")
        if len(maps) != len(levels) or not levels:
            raise ParseError("Realization needs one map per level", field="realization.maps")
        plans = [TransportPlan.from_json(p) for p in document.get("plans", [])]
        return cls(poset=poset, levels=levels, maps=maps, plans=plans)


def _next_level(nu: SimpleValuation, plan: TransportPlan, previous: int) -> int:
    weights = [w for _, w in nu.items()] + list(plan.entries.values()) + list(plan.residuals.values())
    return max(max_exponent(weights), previous + 1)


def _basis_map(mu: SimpleValuation, level: int) -> PartialTreeMap:
    intervals = []
    position = 0
    for x, r in mu.items():
        units = rescale_to_level(r, level)
        intervals.append(Interval(position, position + units, x))
        position += units
    return PartialTreeMap(mu.poset, level, intervals)


def _inductive_map(f: PartialTreeMap, nu: SimpleValuation, plan: TransportPlan, level: int) -> PartialTreeMap:
    '''
      Split every interval of f labelled y into pieces [t_yz] in z order, scaled to
      the new level, then append the residuals [u_z] in z order after the old domain.
    '''
    poset = nu.poset
    shift = level - f.level
    queues: Dict[str, deque] = {}
    for x in {x for x, _ in plan.entries}:
        queues[x] = deque([z, rescale_to_level(t, level)] for z, t in plan.row(x, poset.index))

    intervals = []
    end = 0
    for iv in f.intervals:
        position, stop = iv.lo << shift, iv.hi << shift
        queue = queues.get(iv.image, deque())
        while position < stop:
            if not queue:
                raise AssertionError(f"plan row {iv.image} runs out before its interval is filled")
            z, remaining = queue[0]
            take = min(remaining, stop - position)
            intervals.append(Interval(position, position + take, z))
            position += take
            if take == remaining:
                queue.popleft()
            else:
                queue[0][1] = remaining - take
        end = max(end, stop)

    for z, _ in nu.items():
        u = plan.residuals.get(z)
        if u is None:
            continue
        units = rescale_to_level(u, level)
        intervals.append(Interval(end, end + units, z))
        end += units
    return PartialTreeMap(poset, level, intervals)


def realize_chain(chain: List[SimpleValuation]) -> RealizationResult:
    '''
      Realize mu_1 <= ... <= mu_k as partial maps f_i on C_{m_i} with f_i ν_{m_i} = mu_i.

      Levels are the least admissible: every weight, transport number and residual
      of step i has denominator 2^{m_i}, and m_i > m_{i-1}.

      Raises:
          NotAChain: a consecutive pair fails the order; carries the separating upper set
    '''
    if not chain:
        raise InvariantViolation("non-empty chain", "realize_chain needs at least one valuation")
    poset = chain[0].poset
    for mu in chain:
        if not same_poset(mu.poset, poset):
            raise DifferentPosets("Chain members live on different posets")
        for x, w in mu.items():
            if not isinstance(w, Dyadic):
                raise NonDyadicWeight(f"Weight of '{x}' is not dyadic")

    level = max_exponent(w for _, w in chain[0].items())
    maps = [_basis_map(chain[0], level)]
    levels = [level]
    plans = []
    for i in range(1, len(chain)):
        decision = decide_order_maxflow(chain[i - 1], chain[i])
        if not decision.holds:
            raise NotAChain(
                f"Chain members {i} and {i + 1} are not ordered; separated by {decision.witness.to_list()}",
                position=i,
                witness=decision.witness,
            )
        plan = decision.plan
        level = _next_level(chain[i], plan, level)
        logger.debug(f"Step {i + 1}: level {level}")
        maps.append(_inductive_map(maps[-1], chain[i], plan, level))
        levels.append(level)
        plans.append(plan)

    return RealizationResult(poset=poset, levels=levels, maps=maps, plans=plans)


def check_realization(result: RealizationResult, chain: List[SimpleValuation]) -> List[str]:
    """Failed realization invariants, empty when the result realizes the chain exactly."""
    problems = []
    if len(result.maps) != len(chain):
        return [f"{len(result.maps)} maps for a chain of {len(chain)}"]
    for i in range(1, len(result.levels)):
        if result.levels[i] <= result.levels[i - 1]:
            problems.append(f"levels not increasing at {i + 1}")
    for i, (f, mu) in enumerate(zip(result.maps, chain)):
        if pushforward(f) != mu:
            problems.append(f"pushforward of map {i + 1} differs from measure {i + 1}")
    for i in range(1, len(result.maps)):
        if not partial_map_leq(result.maps[i - 1], result.maps[i]):
            problems.append(f"map {i} is not below map {i + 1}")
    return problems


def evaluate_limit(result: RealizationResult, word: Word) -> Optional[str]:
    '''
      f(c) = sup_n f_n(project(c, m_n)) over the levels whose domain holds the projection.

      Returns:
          the supremum, or None (undefined) when no level's domain contains the projection

      Raises:
          DepthTooSmall: when the word is shorter than the top level
          InvariantViolation: when the values along the word have no supremum, so the
                              maps are not an increasing chain
    '''
    if word.level < result.top_level:
        raise DepthTooSmall(f"Word of depth {word.level} is below the top level {result.top_level}")
    values = []
    for f in result.maps:
        value = f.value(project(word, f.level))
        if value is not None:
            values.append(value)
    if not values:
        return None
    value = supremum(result.poset, values)
    if value is None:
        raise InvariantViolation("maps increasing", f"values {values} along {word.bits} have no supremum")
    return value
