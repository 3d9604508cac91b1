# ------------------------------
# Module: maxflow.py
# Description: Exact Edmonds-Karp on the splitting network; plans, min cuts and
#              the way-below variant
# ------------------------------

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Set, Tuple

from services.constants import (
    DEFAULT_MASS_RULE,
    MASS_RULE_STRICT_PER_ELEMENT,
    MASS_RULE_STRICT_TOTAL,
    MASS_RULES,
)
from services.dyadic import ZERO, Dyadic, format_dyadic
from services.errors import DifferentPosets
from services.poset import UpperSet, same_poset
from services.transport.base import OrderDecider, OrderDecision
from services.transport.network import SINK, SOURCE, FlowNetwork
from services.transport.plan import complete_plan
from services.valuation import SimpleValuation

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROVIDER_NAME = "maxflow"


@dataclass
class FlowResult:
    flow: Dict[Tuple[Hashable, Hashable], Dyadic]
    value: Dyadic
    reachable: Set[Hashable]
    cut_capacity: Dyadic
    augmenting_paths: int = 0


def _residual(network: FlowNetwork, flow: dict, u, v) -> Dyadic:
    return network.capacity(u, v) - flow[(u, v)]


def _find_augmenting_path(network: FlowNetwork, flow: dict):
    '''
      Breadth-first search in the residual graph.

      Returns:
          (parents, reached sink) where parents maps node -> (previous node, forward?)
    '''
    graph = network.graph
    parents = {SOURCE: None}
    queue = deque([SOURCE])
    while queue:
        u = queue.popleft()
        for v in graph.successors(u):
            if v not in parents and _residual(network, flow, u, v) > 0:
                parents[v] = (u, True)
                if v == SINK:
                    return parents, True
                queue.append(v)
        for v in graph.predecessors(u):
            if v not in parents and flow[(v, u)] > 0:
                parents[v] = (u, False)
                queue.append(v)
    return parents, False


def edmonds_karp(network: FlowNetwork) -> FlowResult:
    '''
      Maximum flow by shortest augmenting paths, exact on dyadic capacities.

      Returns:
          FlowResult with the flow, its value, the residual-reachable nodes
          and the capacity of the cut they define
    '''
    flow = {(u, v): ZERO for u, v in network.graph.edges()}
    paths = 0
    while True:
        parents, found = _find_augmenting_path(network, flow)
        if not found:
            break

        path = []
        v = SINK
        while parents[v] is not None:
            u, forward = parents[v]
            path.append((u, v, forward))
            v = u
        path.reverse()

        bottleneck = min(
            _residual(network, flow, u, v) if forward else flow[(v, u)]
            for u, v, forward in path
        )
        for u, v, forward in path:
            if forward:
                flow[(u, v)] = flow[(u, v)] + bottleneck
            else:
                flow[(v, u)] = flow[(v, u)] - bottleneck
        paths += 1
        logger.debug(f"Augmented {format_dyadic(bottleneck)} along {[n for _, n, _ in path]}")

    reachable = set(parents)
    value = ZERO
    for v in network.graph.successors(SOURCE):
        value = value + flow[(SOURCE, v)]
    cut = ZERO
    for u, v in network.graph.edges():
        if u in reachable and v not in reachable:
            cut = cut + network.capacity(u, v)
    return FlowResult(flow=flow, value=value, reachable=reachable, cut_capacity=cut, augmenting_paths=paths)


def _solve(mu: SimpleValuation, nu: SimpleValuation, related) -> Tuple[FlowNetwork, FlowResult]:
    if not same_poset(mu.poset, nu.poset):
        raise DifferentPosets("Valuations live on different posets")
    network = FlowNetwork(mu, nu, related=related)
    result = edmonds_karp(network)
    if result.value != result.cut_capacity:
        # Max-flow/min-cut duality is exact; reaching this means the solver is broken
        raise AssertionError(f"flow {result.value} != cut {result.cut_capacity}")
    return network, result


def _plan_from_flow(network: FlowNetwork, result: FlowResult):
    entries = {}
    for x, y in network.inner_edges():
        t = result.flow[(("left", x), ("right", y))]
        if t > 0:
            entries[(x, y)] = t
    return complete_plan(network.mu, network.nu, entries)


def _cut_witness(network: FlowNetwork, result: FlowResult) -> Tuple[List[str], UpperSet]:
    """Residual-reachable left nodes A and the upper set of everything related-above A."""
    poset = network.mu.poset
    sources = [x for x in network.left_nodes if ("left", x) in result.reachable]
    members = set()
    for x in sources:
        members |= {y for y in poset.elements if network.related(x, y)}
    return sources, UpperSet(members=frozenset(members), poset=poset)


def decide_order_maxflow(mu: SimpleValuation, nu: SimpleValuation) -> OrderDecision:
    '''
      Decide mu <= nu by max-flow on the splitting network.

      Returns:
          OrderDecision with the transport plan when the flow saturates ||mu||,
          otherwise the min cut as a separating upper set U with mu(U) > nu(U)
    '''
    network, result = _solve(mu, nu, mu.poset.leq)
    if result.value == mu.total_mass:
        return OrderDecision(
            holds=True,
            provider=PROVIDER_NAME,
            plan=_plan_from_flow(network, result),
            flow_value=result.value,
            cut_capacity=result.cut_capacity,
        )
    sources, witness = _cut_witness(network, result)
    logger.debug(f"Refused: flow {format_dyadic(result.value)} < {format_dyadic(mu.total_mass)}, cut at {sources}")
    return OrderDecision(
        holds=False,
        provider=PROVIDER_NAME,
        witness=witness,
        flow_value=result.value,
        cut_capacity=result.cut_capacity,
        cut_sources=sources,
    )


# :::::: Way-below :::::: #

def mass_condition(mu: SimpleValuation, nu: SimpleValuation, mass_rule: str) -> bool:
    """strict_total: ||mu|| < ||nu||; strict_per_element: ||mu|| < s_y for every y in the support of nu."""
    if mass_rule == MASS_RULE_STRICT_TOTAL:
        return mu.total_mass < nu.total_mass
    if mass_rule == MASS_RULE_STRICT_PER_ELEMENT:
        return all(mu.total_mass < s for _, s in nu.items())
    raise ValueError(f"Unknown mass rule: {mass_rule}")


@dataclass
class WayBelowDecision:
    holds: bool
    mass_rule: str
    flow_ok: bool
    rules: Dict[str, bool] = field(default_factory=dict)
    plan: Optional[object] = None
    witness: Optional[UpperSet] = None
    cut_sources: Optional[List[str]] = None
    flow_value: Dyadic = ZERO
    cut_capacity: Dyadic = ZERO

    @property
    def rules_disagree(self) -> bool:
        return len(set(self.rules.values())) > 1

    def to_dict(self) -> dict:
        result = {
            "holds": self.holds,
            "mass_rule": self.mass_rule,
            "flow_ok": self.flow_ok,
            "mass_rules": dict(self.rules),
            "rules_disagree": self.rules_disagree,
            "flow_value": format_dyadic(self.flow_value),
            "cut_capacity": format_dyadic(self.cut_capacity),
        }
        if self.plan is not None:
            result["plan"] = self.plan.to_json()
        if self.witness is not None:
            result["witness"] = self.witness.to_list()
            result["cut_sources"] = list(self.cut_sources)
        return result


def decide_way_below(mu: SimpleValuation, nu: SimpleValuation, mass_rule: str = DEFAULT_MASS_RULE) -> WayBelowDecision:
    '''
      Decide mu << nu: a flow through way-below edges saturating ||mu|| plus the
      strict mass condition of the chosen rule. Both rules are always evaluated.
    '''
    if mass_rule not in MASS_RULES:
        raise ValueError(f"Unknown mass rule: {mass_rule}")
    network, result = _solve(mu, nu, mu.poset.waybelow)
    flow_ok = result.value == mu.total_mass
    rules = {rule: mass_condition(mu, nu, rule) for rule in MASS_RULES}
    decision = WayBelowDecision(
        holds=flow_ok and rules[mass_rule],
        mass_rule=mass_rule,
        flow_ok=flow_ok,
        rules=rules,
        flow_value=result.value,
        cut_capacity=result.cut_capacity,
    )
    if flow_ok:
        decision.plan = _plan_from_flow(network, result)
    else:
        decision.cut_sources, decision.witness = _cut_witness(network, result)
    if decision.rules_disagree:
        logger.warning(f"Mass rules disagree on this pair: {rules}")
    return decision


class MaxFlowDecider(OrderDecider):
    name = PROVIDER_NAME

    def decide(self, mu: SimpleValuation, nu: SimpleValuation) -> OrderDecision:
        return decide_order_maxflow(mu, nu)
