# ------------------------------
# Module: transport.py
# Description: order, split and waybelow commands and their re-checks
# ------------------------------

import logging
from typing import Callable, List, Optional

from services.constants import ENUMERATION_LIMIT, MASS_RULES
from services.dyadic import Dyadic, format_dyadic
from services.poset import UpperSet
from services.transport import get_order_decider
from services.transport.maxflow import decide_order_maxflow, decide_way_below, mass_condition
from services.transport.plan import TransportPlan, verify_transport_plan
from services.valuation import SimpleValuation, order_oracle
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import (
    embed_valuations,
    entry,
    rebuild_poset,
    rebuild_valuations,
    recheck_result,
    separation_entry,
)
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck, TranscriptEntry

logger = logging.getLogger(__name__)


def _plan_entries(mu: SimpleValuation, nu: SimpleValuation, plan: TransportPlan,
                  related: Optional[Callable[[str, str], bool]] = None) -> List[TranscriptEntry]:
    check = verify_transport_plan(mu, nu, plan, related)
    return [
        entry("transport plan satisfies every clause", check.passes, check.first_violation),
        entry("plan entries are dyadic", all(isinstance(v, Dyadic) for v in plan.values())),
    ]


def _cut_entry(mu: SimpleValuation, nu: SimpleValuation, sources: List[str], witness: UpperSet) -> TranscriptEntry:
    # Hall's condition fails on the cut: the sources carry more than the set they can reach
    m, n = mu.mass(sources), nu.mass(witness.members)
    return entry(
        "cut sources outweigh what they reach: mu(A) > nu(W)",
        m > n,
        f"mu(A) = {format_dyadic(m)}, nu(W) = {format_dyadic(n)}",
    )


def _oracle_entry(mu: SimpleValuation, nu: SimpleValuation, holds: bool) -> Optional[TranscriptEntry]:
    if len(mu.poset) > ENUMERATION_LIMIT:
        return None
    oracle = order_oracle(mu, nu)
    return entry("agrees with upper-set enumeration", oracle.holds == holds, f"{oracle.checked} upper sets checked")


def _decision(holds: bool) -> Decision:
    return Decision.HOLDS if holds else Decision.FAILS


# :::::: order :::::: #

def run_order(mu: SimpleValuation, nu: SimpleValuation, options: CommandOptions,
              provider: Optional[str] = None) -> Certificate:
    decider = get_order_decider(provider)
    logger.info(f"Deciding the valuation order with the {decider.name} provider")
    result = decider.decide(mu, nu)

    witnesses = result.to_dict()
    witnesses.pop("holds")
    witnesses.pop("provider")

    transcript = []
    if result.plan is not None:
        transcript.extend(_plan_entries(mu, nu, result.plan))
    if result.witness is not None:
        transcript.append(entry("witness is an upper set", mu.poset.up_closure(result.witness.members) == result.witness.members))
        transcript.append(separation_entry(mu, nu, result.witness))
    if result.flow_value is not None:
        transcript.append(entry(
            "flow value equals cut capacity",
            result.flow_value == result.cut_capacity,
            f"flow {format_dyadic(result.flow_value)}, cut {format_dyadic(result.cut_capacity)}",
        ))
    oracle = _oracle_entry(mu, nu, result.holds)
    if oracle is not None:
        transcript.append(oracle)

    return build_certificate(
        Command.ORDER.value,
        {"provider": decider.name},
        embed_valuations(mu.poset, mu=mu, nu=nu),
        _decision(result.holds),
        witnesses,
        transcript,
    )


def recheck_order(certificate: dict) -> Recheck:
    '''
      Re-derive an order or split decision from the embedded plan or witness.
      Certificates carrying neither fall back on upper-set enumeration.
    '''
    inputs = certificate["inputs"]
    poset = rebuild_poset(inputs["poset"])
    mu, nu = rebuild_valuations(poset, [inputs["mu"], inputs["nu"]])
    witnesses = certificate["witnesses"]

    if "plan" in witnesses:
        transcript = _plan_entries(mu, nu, TransportPlan.from_json(witnesses["plan"]))
        return recheck_result(Decision.HOLDS if transcript[0].passed else Decision.UNVERIFIABLE, transcript)
    if "witness" in witnesses:
        upper = poset.upper_set(witnesses["witness"])
        separation = separation_entry(mu, nu, upper)
        return recheck_result(Decision.FAILS if separation.passed else Decision.UNVERIFIABLE, [separation])

    oracle = order_oracle(mu, nu)
    return recheck_result(
        _decision(oracle.holds),
        [entry("upper-set enumeration", True, f"{oracle.checked} upper sets checked")],
    )


# :::::: split :::::: #

def run_split(mu: SimpleValuation, nu: SimpleValuation, options: CommandOptions) -> Certificate:
    '''
      Produce the transport plan itself. Every clause of the plan is re-checked
      separately in the transcript so a reader can follow the bookkeeping.
    '''
    logger.info("Splitting mu into nu by max-flow")
    result = decide_order_maxflow(mu, nu)
    poset = mu.poset
    witnesses = result.to_dict()
    witnesses.pop("holds")
    witnesses.pop("provider")

    transcript = []
    if result.plan is not None:
        plan = result.plan
        witnesses["rows"] = {
            x: {y: format_dyadic(t) for y, t in plan.row(x, poset.index)}
            for x in poset.elements if plan.row(x)
        }
        for x in poset.elements:
            r = mu.weight(x)
            transcript.append(entry(f"row sum of {x} equals its mass", plan.row_sum(x) == r, format_dyadic(r)))
        for y in poset.elements:
            s = nu.weight(y)
            transcript.append(entry(f"column sum of {y} is at most its mass", plan.column_sum(y) <= s, format_dyadic(s)))
        for (x, y), t in plan.entries.items():
            transcript.append(entry(f"{x} <= {y} for t = {format_dyadic(t)}", poset.leq(x, y)))
        transcript.extend(_plan_entries(mu, nu, plan))
    else:
        transcript.append(separation_entry(mu, nu, result.witness))
        transcript.append(_cut_entry(mu, nu, result.cut_sources, result.witness))

    return build_certificate(
        Command.SPLIT.value,
        {},
        embed_valuations(poset, mu=mu, nu=nu),
        _decision(result.holds),
        witnesses,
        transcript,
    )


# :::::: waybelow :::::: #

def run_waybelow(mu: SimpleValuation, nu: SimpleValuation, options: CommandOptions) -> Certificate:
    logger.info(f"Deciding way-below with mass rule {options.mass_rule}")
    result = decide_way_below(mu, nu, options.mass_rule)
    witnesses = result.to_dict()
    witnesses.pop("holds")

    transcript = []
    if result.plan is not None:
        transcript.extend(_plan_entries(mu, nu, result.plan, mu.poset.waybelow))
    else:
        transcript.append(_cut_entry(mu, nu, result.cut_sources, result.witness))
    for rule in MASS_RULES:
        transcript.append(entry(
            f"mass rule {rule}",
            result.rules[rule],
            f"||mu|| = {format_dyadic(mu.total_mass)}, ||nu|| = {format_dyadic(nu.total_mass)}",
        ))

    return build_certificate(
        Command.WAYBELOW.value,
        {"mass_rule": options.mass_rule},
        embed_valuations(mu.poset, mu=mu, nu=nu),
        _decision(result.holds),
        witnesses,
        transcript,
    )


def recheck_waybelow(certificate: dict) -> Recheck:
    inputs = certificate["inputs"]
    poset = rebuild_poset(inputs["poset"])
    mu, nu = rebuild_valuations(poset, [inputs["mu"], inputs["nu"]])
    witnesses = certificate["witnesses"]
    mass_rule = certificate["arguments"]["mass_rule"]

    if "plan" in witnesses:
        transcript = _plan_entries(mu, nu, TransportPlan.from_json(witnesses["plan"]), poset.waybelow)
        flow_ok = transcript[0].passed
        if not flow_ok:
            return recheck_result(Decision.UNVERIFIABLE, transcript)
    else:
        upper = poset.upper_set(witnesses["witness"])
        cut = _cut_entry(mu, nu, witnesses["cut_sources"], upper)
        transcript = [cut]
        if not cut.passed:
            return recheck_result(Decision.UNVERIFIABLE, transcript)
        flow_ok = False

    rule_ok = mass_condition(mu, nu, mass_rule)
    transcript.append(entry(f"mass rule {mass_rule}", rule_ok))
    return recheck_result(_decision(flow_ok and rule_ok), transcript)
