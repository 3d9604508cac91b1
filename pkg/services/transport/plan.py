# ------------------------------
# Module: plan.py
# Description: Transport plans {t_xy, u_y, w} and their independent verification
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from services.dyadic import ONE, ZERO, Dyadic, format_dyadic, parse_dyadic
from services.errors import ParseError
from services.valuation import SimpleValuation

logger = logging.getLogger(__name__)

PAIR_SEPARATOR = "|"


@dataclass
class TransportPlan:
    '''
      Transport numbers between two simple valuations.

      entries: (x, y) -> t_xy > 0, mass of x sent up to y
      residuals: y -> u_y = s_y - sum_x t_xy, only positive ones kept
      leftover: w = 1 - ||nu||
    '''
    entries: Dict[Tuple[str, str], Dyadic] = field(default_factory=dict)
    residuals: Dict[str, Dyadic] = field(default_factory=dict)
    leftover: Dyadic = ZERO

    def row(self, x: str, order: Optional[Dict[str, int]] = None) -> List[Tuple[str, Dyadic]]:
        """Entries of row x as (y, t_xy), in enumeration order of y when an index is given."""
        row = [(y, t) for (x_, y), t in self.entries.items() if x_ == x]
        if order is not None:
            row.sort(key=lambda item: order[item[0]])
        return row

    def column_sum(self, y: str) -> Dyadic:
        result = ZERO
        for (_, y_), t in self.entries.items():
            if y_ == y:
                result = result + t
        return result

    def row_sum(self, x: str) -> Dyadic:
        result = ZERO
        for (x_, _), t in self.entries.items():
            if x_ == x:
                result = result + t
        return result

    def values(self) -> List[Dyadic]:
        return list(self.entries.values()) + list(self.residuals.values()) + [self.leftover]

    def to_json(self) -> dict:
        return {
            "t": {f"{x}{PAIR_SEPARATOR}{y}": format_dyadic(t) for (x, y), t in self.entries.items()},
            "u": {y: format_dyadic(u) for y, u in self.residuals.items()},
            "w": format_dyadic(self.leftover),
        }

    @classmethod
    def from_json(cls, document: dict) -> "TransportPlan":
        if not isinstance(document, dict):
            raise ParseError("Transport plan must be an object", field="plan")
        entries = {}
        for key, value in document.get("t", {}).items():
            if key.count(PAIR_SEPARATOR) != 1:
                raise ParseError(f"Plan key '{key}' is not of the form 'x|y'", field="plan.t")
            x, y = key.split(PAIR_SEPARATOR)
            entries[(x, y)] = parse_dyadic(value, field=f"plan.t.{key}")
        residuals = {y: parse_dyadic(u, field=f"plan.u.{y}") for y, u in document.get("u", {}).items()}
        leftover = parse_dyadic(document.get("w", "0"), field="plan.w")
        return cls(entries=entries, residuals=residuals, leftover=leftover)


def complete_plan(mu: SimpleValuation, nu: SimpleValuation, entries: Dict[Tuple[str, str], Dyadic]) -> TransportPlan:
    """Fill in the residuals and leftover implied by the transport numbers."""
    index = nu.poset.index
    ordered = dict(sorted(
        ((pair, t) for pair, t in entries.items() if t > 0),
        key=lambda item: (index[item[0][0]], index[item[0][1]]),
    ))
    plan = TransportPlan(entries=ordered)
    for y, s in nu.items():
        u = s - plan.column_sum(y)
        if u > 0:
            plan.residuals[y] = u
    plan.leftover = ONE - nu.total_mass
    return plan


@dataclass
class PlanCheck:
    passes: bool
    violations: List[str] = field(default_factory=list)

    @property
    def first_violation(self) -> Optional[str]:
        return self.violations[0] if self.violations else None


def verify_transport_plan(mu: SimpleValuation, nu: SimpleValuation, plan: TransportPlan,
                          related: Optional[Callable[[str, str], bool]] = None) -> PlanCheck:
    '''
      Re-check every clause of a transport plan by exact arithmetic, without the solver.

      Args:
          mu, nu: the two valuations
          plan: the plan to check
          related: order used by the order clause, defaults to <= of the poset

      Returns:
          PlanCheck with one message per violated clause
    '''
    poset = mu.poset
    related = related or poset.leq
    violations = []

    for (x, y), t in plan.entries.items():
        if not isinstance(t, Dyadic):
            violations.append(f"entry {x}|{y} is not dyadic")
            continue
        if x not in poset or y not in poset:
            violations.append(f"entry {x}|{y} names an unknown element")
            continue
        if t < 0:
            violations.append(f"entry {x}|{y} is negative")
        if t > 0 and not related(x, y):
            violations.append(f"order clause: t_{x},{y} = {format_dyadic(t)} > 0 but {x} is not below {y}")
        if mu.weight(x) == 0 and t != 0:
            violations.append(f"entry {x}|{y} leaves an element outside the support of mu")

    for x in poset.elements:
        r = mu.weight(x)
        row_sum = plan.row_sum(x)
        if row_sum != r:
            violations.append(f"row sum of {x}: {format_dyadic(row_sum)} != {format_dyadic(r)}")

    for y in poset.elements:
        s = nu.weight(y)
        column_sum = plan.column_sum(y)
        if column_sum > s:
            violations.append(f"column sum of {y}: {format_dyadic(column_sum)} > {format_dyadic(s)}")
        u = plan.residuals.get(y, ZERO)
        if u != s - column_sum:
            violations.append(f"residual of {y}: {format_dyadic(u)} != {format_dyadic(s - column_sum)}")

    w = ONE - nu.total_mass
    if plan.leftover != w:
        violations.append(f"leftover: {format_dyadic(plan.leftover)} != {format_dyadic(w)}")

    return PlanCheck(passes=not violations, violations=violations)
