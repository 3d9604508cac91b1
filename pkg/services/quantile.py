# ------------------------------
# Module: quantile.py
# Description: Distribution functions and their quantile adjoints for measures on the
#              dyadic chain [0, 1]
# ------------------------------

import itertools
import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from services.dyadic import ONE, ZERO, Dyadic, format_dyadic, parse_dyadic
from services.errors import DepthTooSmall, InvariantViolation, OutOfRange
from services.poset import FinitePoset, UpperSet
from services.valuation import SimpleValuation, order_oracle

logger = logging.getLogger(__name__)

# Exhaustive subset checks on carriers up to this size, pairs beyond
EXHAUSTIVE_CARRIER_LIMIT = 10

SIDE_RIGHT = "right"
SIDE_LEFT = "left"


def _check_unit(value: Dyadic, name: str):
    if value < 0 or value > 1:
        raise OutOfRange(f"{name} = {format_dyadic(value)} is outside [0, 1]")


def _check_resolution(resolution: int):
    if resolution < 0:
        raise DepthTooSmall(f"grid exponent must be non-negative, got {resolution}")


@lru_cache(maxsize=256)
def _chain_model(carrier: Tuple[Dyadic, ...]) -> FinitePoset:
    names = [format_dyadic(p) for p in carrier]
    return FinitePoset(names, list(zip(names, names[1:])), bottom=names[0])


def chain_model(points: Iterable[Dyadic]) -> FinitePoset:
    '''
      The finite sub-chain of [0, 1] on the given points plus 0 (bottom) and 1 (top),
      ordered numerically, with the points' dyadic text as element names.
    '''
    carrier = set(points) | {ZERO, ONE}
    for p in carrier:
        _check_unit(p, "chain point")
    return _chain_model(tuple(sorted(carrier)))


class ChainMeasure:
    """A simple sub-probability measure on dyadic points of [0, 1]."""

    def __init__(self, masses: Mapping[Dyadic, Dyadic], carrier: Iterable[Dyadic] = ()):
        cleaned = {p: w for p, w in masses.items() if w != 0}
        self.poset = chain_model(set(cleaned) | set(carrier))
        self.valuation = SimpleValuation(self.poset, {format_dyadic(p): w for p, w in cleaned.items()})
        self.masses: Dict[Dyadic, Dyadic] = dict(sorted(cleaned.items()))
        self.points: List[Dyadic] = list(self.masses)
        self._cumulative: List[Dyadic] = []
        running = ZERO
        for p in self.points:
            running = running + self.masses[p]
            self._cumulative.append(running)

    @classmethod
    def from_points(cls, masses: Mapping[object, object], carrier: Iterable[Dyadic] = ()) -> "ChainMeasure":
        return cls({parse_dyadic(p): parse_dyadic(w) for p, w in masses.items()}, carrier)

    @classmethod
    def from_valuation(cls, valuation: SimpleValuation) -> "ChainMeasure":
        carrier = [parse_dyadic(x, field="element") for x in valuation.poset.elements]
        masses = {parse_dyadic(x, field="element"): w for x, w in valuation.items()}
        return cls(masses, carrier)

    @property
    def carrier(self) -> List[Dyadic]:
        return [parse_dyadic(x) for x in self.poset.elements]

    @property
    def total_mass(self) -> Dyadic:
        return self.valuation.total_mass

    def on_carrier(self, carrier: Iterable[Dyadic]) -> "ChainMeasure":
        return ChainMeasure(self.masses, set(carrier) | set(self.carrier))

    def weight(self, point: Dyadic) -> Dyadic:
        return self.masses.get(point, ZERO)

    def cumulative(self) -> List[Tuple[Dyadic, Dyadic]]:
        """(support point, F at that point) in increasing order."""
        return list(zip(self.points, self._cumulative))

    def to_mass_map(self) -> Dict[str, str]:
        return {format_dyadic(p): format_dyadic(w) for p, w in self.masses.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMeasure):
            return NotImplemented
        return self.masses == other.masses

    def __repr__(self) -> str:
        terms = " + ".join(f"{format_dyadic(w)}·δ_{format_dyadic(p)}" for p, w in self.masses.items())
        return f"ChainMeasure({terms or '0'})"


@dataclass
class StepFunction:
    '''
      Monotone step function given by knots and one value per knot.

      right: f(x) = values[i] on [knots[i], knots[i+1]), the last value up to 1
      left:  f(r) = values[i] on (knots[i-1], knots[i]], values[0] at and below knots[0]
    '''
    knots: List[Dyadic]
    values: List[Dyadic]
    side: str

    def __call__(self, x: Dyadic) -> Dyadic:
        if self.side == SIDE_RIGHT:
            i = bisect_right(self.knots, x) - 1
            return self.values[max(i, 0)]
        i = bisect_left(self.knots, x)
        return self.values[min(i, len(self.values) - 1)]

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:])) and \
            all(a < b for a, b in zip(self.knots, self.knots[1:]))

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "knots": [format_dyadic(k) for k in self.knots],
            "values": [format_dyadic(v) for v in self.values],
        }


# :::::: Operations :::::: #

def cdf(mu: ChainMeasure, x: Dyadic) -> Dyadic:
    """F(x) = mu(↓x)."""
    _check_unit(x, "x")
    i = bisect_right(mu.points, x)
    return mu._cumulative[i - 1] if i > 0 else ZERO


def quantile(mu: ChainMeasure, r: Dyadic) -> Dyadic:
    '''
      G(r) = inf F^{-1}(↑r): the least point with F >= r, 1 when F never reaches r.
    '''
    _check_unit(r, "r")
    if r == 0:
        return ZERO
    i = bisect_left(mu._cumulative, r)
    return mu.points[i] if i < len(mu.points) else ONE


def cdf_step_function(mu: ChainMeasure) -> StepFunction:
    knots = [ZERO] + [p for p in mu.points if p != 0]
    return StepFunction(knots=knots, values=[cdf(mu, k) for k in knots], side=SIDE_RIGHT)


def quantile_step_function(mu: ChainMeasure) -> StepFunction:
    knots = [ZERO] + list(mu._cumulative)
    values = [ZERO] + list(mu.points)
    if mu.total_mass < 1:
        knots.append(ONE)
        values.append(ONE)
    return StepFunction(knots=knots, values=values, side=SIDE_LEFT)


@dataclass
class QuantilePushforward:
    measure: ChainMeasure
    deficit: Dyadic

    @property
    def deviation(self) -> bool:
        return self.deficit > 0

    @property
    def flags(self) -> List[str]:
        return [f"mass {format_dyadic(self.deficit)} assigned to ⊤"] if self.deviation else []


def quantile_pushforward(mu: ChainMeasure) -> QuantilePushforward:
    '''
      Lebesgue measure pushed through G: each value of G gets the length of the
      r-interval on which G takes it. Sub-probability deficits land on 1 (⊤).
    '''
    step = quantile_step_function(mu)
    masses: Dict[Dyadic, Dyadic] = {}
    for i in range(1, len(step.knots)):
        length = step.knots[i] - step.knots[i - 1]
        value = step.values[i]
        masses[value] = masses.get(value, ZERO) + length
    deficit = ONE - mu.total_mass
    return QuantilePushforward(measure=ChainMeasure(masses, mu.carrier), deficit=deficit)


def bottom_closure(mu: ChainMeasure) -> ChainMeasure:
    """mu + (1 - ||mu||) δ_0."""
    masses = dict(mu.masses)
    masses[ZERO] = masses.get(ZERO, ZERO) + (ONE - mu.total_mass)
    return ChainMeasure(masses, mu.carrier)


def cdf_preserves_infima(mu: ChainMeasure) -> bool:
    '''
      F(min S) = min F(S) for every non-empty S of the carrier; exhaustive on
      small carriers, on pairs otherwise (enough on a chain).
    '''
    carrier = mu.carrier
    values = {p: cdf(mu, p) for p in carrier}
    sizes = range(1, len(carrier) + 1) if len(carrier) <= EXHAUSTIVE_CARRIER_LIMIT else (1, 2)
    for size in sizes:
        for subset in itertools.combinations(carrier, size):
            if values[min(subset)] != min(values[p] for p in subset):
                return False
    return True


def adjunction_violations(mu: ChainMeasure, resolution: int) -> List[str]:
    '''
      F(G(r)) >= r for grid r <= ||mu||, and G(F(x)) <= x for every grid x.
    '''
    _check_resolution(resolution)
    violations = []
    for k in range((1 << resolution) + 1):
        r = Dyadic(k, resolution)
        if r <= mu.total_mass and cdf(mu, quantile(mu, r)) < r:
            violations.append(f"F(G({format_dyadic(r)})) < {format_dyadic(r)}")
        if quantile(mu, cdf(mu, r)) > r:
            violations.append(f"G(F({format_dyadic(r)})) > {format_dyadic(r)}")
    return violations


# :::::: Order isomorphism :::::: #

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_OUTSIDE = "outside_hypothesis"


@dataclass
class IsoCheck:
    status: str
    valuation_order: bool
    quantile_order: bool
    upper_set_witness: Optional[UpperSet] = None
    quantile_witness: Optional[Dyadic] = None
    points_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "valuation_order": self.valuation_order,
            "quantile_order": self.quantile_order,
            "upper_set_witness": self.upper_set_witness.to_list() if self.upper_set_witness else None,
            "quantile_witness": format_dyadic(self.quantile_witness) if self.quantile_witness is not None else None,
            "points_checked": self.points_checked,
        }


def chain_order_iso_check(mu: ChainMeasure, nu: ChainMeasure, resolution: int) -> IsoCheck:
    '''
      Compare mu <= nu in the valuation order with G_mu <= G_nu pointwise.

      The pointwise check runs from r = 1 downward over the grid k/2^d plus the
      knots of both quantile functions, where G can change. Pairs of unequal total
      mass are reported as outside the verified hypothesis.
    '''
    _check_resolution(resolution)
    carrier = set(mu.carrier) | set(nu.carrier)
    mu_c, nu_c = mu.on_carrier(carrier), nu.on_carrier(carrier)
    oracle = order_oracle(mu_c.valuation, nu_c.valuation)

    grid = {Dyadic(k, resolution) for k in range((1 << resolution) + 1)}
    grid |= set(quantile_step_function(mu_c).knots) | set(quantile_step_function(nu_c).knots)
    witness = None
    for r in sorted(grid, reverse=True):
        if quantile(mu_c, r) > quantile(nu_c, r):
            witness = r
            break
    quantile_order = witness is None

    if mu.total_mass != nu.total_mass:
        status = STATUS_OUTSIDE
    elif oracle.holds == quantile_order:
        status = STATUS_PASS
    else:
        status = STATUS_FAIL
    return IsoCheck(
        status=status,
        valuation_order=oracle.holds,
        quantile_order=quantile_order,
        upper_set_witness=oracle.witness,
        quantile_witness=witness,
        points_checked=len(grid),
    )
