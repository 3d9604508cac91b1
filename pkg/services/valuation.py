# ------------------------------
# Module: valuation.py
# Description: Simple sub-probability valuations, their order, monotone integrals and
#              the finite-horizon Portmanteau checker
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from services.dyadic import ONE, ZERO, Dyadic, format_dyadic, parse_dyadic
from services.errors import (
    DifferentPosets,
    ForeignUpperSet,
    InvariantViolation,
    MissingValue,
    NonDyadicWeight,
    NotMonotone,
    OutOfRange,
    UnknownIdentifier,
)
from services.poset import FinitePoset, UpperSet, enumerate_upper_sets, same_poset

logger = logging.getLogger(__name__)


class SimpleValuation:
    """
    A finite weighted sum of point masses with total mass at most 1.

    Zero weights are dropped, so two valuations are equal iff their weight maps are.
    """

    def __init__(self, poset: FinitePoset, weights: Mapping[str, Dyadic]):
        self.poset = poset
        cleaned: Dict[str, Dyadic] = {}
        mass = ZERO
        for x in weights:
            if x not in poset:
                raise UnknownIdentifier(f"Valuation puts mass on unknown element '{x}'")
        for x in poset.ordered(weights.keys()):
            w = weights[x]
            if isinstance(w, int) and not isinstance(w, bool):
                w = Dyadic(w)
            if not isinstance(w, Dyadic):
                raise NonDyadicWeight(f"Weight of '{x}' is not dyadic: {w!r}")
            if w < 0:
                raise InvariantViolation("non-negative weights", f"weight of '{x}' is {format_dyadic(w)}")
            if w:
                cleaned[x] = w
                mass = mass + w
        if mass > ONE:
            raise InvariantViolation("total mass <= 1", f"total mass is {format_dyadic(mass)}")
        self._weights = cleaned
        self._total = mass

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleValuation):
            return NotImplemented
        return same_poset(self.poset, other.poset) and self._weights == other._weights

    def __hash__(self) -> int:
        return hash(tuple(self._weights.items()))

    def __repr__(self) -> str:
        terms = " + ".join(f"{format_dyadic(w)}·δ_{x}" for x, w in self._weights.items())
        return f"SimpleValuation({terms or '0'})"

    def weight(self, x: str) -> Dyadic:
        return self._weights.get(x, ZERO)

    def support(self) -> List[str]:
        """Support in enumeration order."""
        return list(self._weights)

    def items(self) -> List[Tuple[str, Dyadic]]:
        return list(self._weights.items())

    @property
    def total_mass(self) -> Dyadic:
        return self._total

    def mass(self, members: Iterable[str]) -> Dyadic:
        result = ZERO
        for x in members:
            w = self._weights.get(x)
            if w is not None:
                result = result + w
        return result

    def plus(self, other: "SimpleValuation") -> "SimpleValuation":
        _require_same_poset(self, other)
        weights = dict(self._weights)
        for x, w in other._weights.items():
            weights[x] = weights.get(x, ZERO) + w
        return SimpleValuation(self.poset, weights)

    def to_mass_map(self) -> Dict[str, str]:
        return {x: format_dyadic(w) for x, w in self._weights.items()}


def make_valuation(poset: FinitePoset, weights: Mapping[str, object]) -> SimpleValuation:
    '''
      Validating constructor; weights may be Dyadics, ints or dyadic text.
    '''
    parsed = {}
    for x, w in weights.items():
        parsed[str(x)] = w if isinstance(w, Dyadic) else parse_dyadic(w, field=f"mass.{x}")
    return SimpleValuation(poset, parsed)


def zero_valuation(poset: FinitePoset) -> SimpleValuation:
    return SimpleValuation(poset, {})


def dirac(poset: FinitePoset, x: str, weight: Dyadic = ONE) -> SimpleValuation:
    return SimpleValuation(poset, {x: weight})


def total_mass(mu: SimpleValuation) -> Dyadic:
    return mu.total_mass


def _require_same_poset(mu: SimpleValuation, nu: SimpleValuation):
    if not same_poset(mu.poset, nu.poset):
        raise DifferentPosets("Valuations live on different posets")


@dataclass
class MonotoneFunction:
    """Non-negative dyadic values on poset elements, order-preserving."""
    poset: FinitePoset
    values: Dict[str, Dyadic]

    def __post_init__(self):
        for x, v in self.values.items():
            if x not in self.poset:
                raise UnknownIdentifier(f"Function defined on unknown element '{x}'")
            if not isinstance(v, Dyadic) or v < 0:
                raise InvariantViolation("non-negative dyadic values", f"value at '{x}' is {v!r}")
        for x, vx in self.values.items():
            for y in self.poset.up(x):
                vy = self.values.get(y)
                if vy is not None and vx > vy:
                    raise NotMonotone(f"{x} <= {y} but f({x}) = {format_dyadic(vx)} > f({y}) = {format_dyadic(vy)}")


def indicator(upper: UpperSet) -> MonotoneFunction:
    """0/1 indicator of an upper set, the monotone functions valuation masses integrate."""
    return MonotoneFunction(
        poset=upper.poset,
        values={x: (ONE if x in upper else ZERO) for x in upper.poset.elements},
    )


# :::::: Operations :::::: #

def valuation_mass(mu: SimpleValuation, upper: UpperSet) -> Dyadic:
    '''
      mu(U), exact.

      Raises:
          ForeignUpperSet: when U is an upper set of another poset
    '''
    if not same_poset(upper.poset, mu.poset):
        raise ForeignUpperSet("Upper set belongs to a different poset")
    return mu.mass(upper.members)


@dataclass
class OracleResult:
    holds: bool
    witness: Optional[UpperSet] = None
    checked: int = 0


def order_oracle(mu: SimpleValuation, nu: SimpleValuation) -> OracleResult:
    '''
      Brute-force valuation order: mu(U) <= nu(U) for every upper set U.

      Returns:
          OracleResult; on failure the first separating upper set in enumeration order
    '''
    _require_same_poset(mu, nu)
    upper_sets = enumerate_upper_sets(mu.poset)
    for upper in upper_sets:
        if mu.mass(upper.members) > nu.mass(upper.members):
            return OracleResult(holds=False, witness=upper, checked=len(upper_sets))
    return OracleResult(holds=True, checked=len(upper_sets))


def integrate_monotone(mu: SimpleValuation, f: MonotoneFunction) -> Dyadic:
    """Exact sum of r_x * f(x) over the support of mu."""
    if not same_poset(mu.poset, f.poset):
        raise DifferentPosets("Function and valuation live on different posets")
    result = ZERO
    for x, w in mu.items():
        if x not in f.values:
            raise MissingValue(f"Function is not defined at support element '{x}'")
        result = result + w * f.values[x]
    return result


# :::::: Portmanteau :::::: #

LIMINF_CONDITION = "liminf_open"
LIMSUP_CONDITION = "limsup_finitely_generated"


@dataclass
class Violation:
    condition: str
    witness: UpperSet
    observed: Dyadic
    bound: Dyadic

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "witness": self.witness.to_list(),
            "observed": format_dyadic(self.observed),
            "bound": format_dyadic(self.bound),
        }


@dataclass
class ConvergenceCertificate:
    horizon: int
    tolerance: Dyadic
    violations: List[Violation] = field(default_factory=list)
    open_sets_checked: int = 0
    generated_sets_checked: int = 0

    @property
    def passes(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "tolerance": format_dyadic(self.tolerance),
            "passes": self.passes,
            "open_sets_checked": self.open_sets_checked,
            "generated_sets_checked": self.generated_sets_checked,
            "violations": [v.to_dict() for v in self.violations],
        }


def finitely_generated_upper_sets(poset: FinitePoset, generators: Iterable[str]) -> List[UpperSet]:
    """All ↑F with F a subset of the given generators, sorted like enumerate_upper_sets."""
    generators = frozenset(generators)
    found = {}
    for upper in enumerate_upper_sets(poset):
        members = poset.up_closure(upper.members & generators)
        found.setdefault(members, UpperSet(members=members, poset=poset))
    return sorted(found.values(), key=UpperSet.sort_key)


def portmanteau_check(sequence: List[SimpleValuation], limit: SimpleValuation,
                      horizon: int, tolerance: Dyadic) -> ConvergenceCertificate:
    '''
      Check both Portmanteau inequalities over the tail n >= horizon (1-based).

      Args:
          sequence: mu_1, ..., mu_N
          limit: the candidate limit mu
          horizon: first index of the tail, 1 <= horizon <= N
          tolerance: slack allowed on both inequalities

      Returns:
          ConvergenceCertificate listing every violated inequality with its witness
    '''
    if not sequence:
        raise OutOfRange("Portmanteau check needs a non-empty sequence")
    if not 1 <= horizon <= len(sequence):
        raise OutOfRange(f"horizon {horizon} is outside 1..{len(sequence)}")
    for mu in sequence:
        _require_same_poset(mu, limit)
    if tolerance < 0:
        raise OutOfRange("tolerance must be non-negative")

    poset = limit.poset
    tail = sequence[horizon - 1:]
    certificate = ConvergenceCertificate(horizon=horizon, tolerance=tolerance)

    upper_sets = enumerate_upper_sets(poset)
    certificate.open_sets_checked = len(upper_sets)
    for upper in upper_sets:
        observed = min(mu.mass(upper.members) for mu in tail)
        bound = limit.mass(upper.members) - tolerance
        if observed < bound:
            certificate.violations.append(Violation(LIMINF_CONDITION, upper, observed, bound))

    generators = set(limit.support())
    for mu in sequence:
        generators.update(mu.support())
    generated = finitely_generated_upper_sets(poset, generators)
    certificate.generated_sets_checked = len(generated)
    for upper in generated:
        observed = max(mu.mass(upper.members) for mu in tail)
        bound = limit.mass(upper.members) + tolerance
        if observed > bound:
            certificate.violations.append(Violation(LIMSUP_CONDITION, upper, observed, bound))

    logger.debug(f"Portmanteau check at horizon {horizon}: {len(certificate.violations)} violations")
    return certificate
