import logging

import pytest

from services.constants import MASS_RULE_STRICT_PER_ELEMENT, MASS_RULE_STRICT_TOTAL
from services.dyadic import Dyadic
from services.errors import DifferentPosets, ParseError
from services.fixtures import BOTTOM, TOP, antichain_poset, diamond_poset, fixture_posets, get_rng, random_pair, v_poset
from services.poset import build_poset
from services.sweeps import run_oracle_sweep, sweep_passes
from services.transport import TransportPlan, decide_order_maxflow, decide_way_below, get_order_decider, verify_transport_plan
from services.transport.maxflow import edmonds_karp
from services.transport.network import SINK, SOURCE, FlowNetwork
from services.valuation import make_valuation, order_oracle

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

V = v_poset()
DIAMOND = diamond_poset()


def test_v_poset_plan():
    mu = make_valuation(V, {BOTTOM: "1/2"})
    nu = make_valuation(V, {"a": "1/4", "b": "1/4"})
    decision = decide_order_maxflow(mu, nu)
    assert decision.holds
    assert decision.plan.entries == {(BOTTOM, "a"): Dyadic(1, 2), (BOTTOM, "b"): Dyadic(1, 2)}
    assert decision.plan.leftover == Dyadic(1, 1)
    assert decision.flow_value == decision.cut_capacity == Dyadic(1, 1)
    assert verify_transport_plan(mu, nu, decision.plan).passes


def test_diamond_plan_and_refusal():
    mu = make_valuation(DIAMOND, {"a": "1/2", "b": "1/2"})
    nu = make_valuation(DIAMOND, {TOP: "1"})
    decision = decide_order_maxflow(mu, nu)
    assert decision.plan.entries == {("a", TOP): Dyadic(1, 1), ("b", TOP): Dyadic(1, 1)}

    refused = decide_order_maxflow(nu, make_valuation(DIAMOND, {"a": "1"}))
    assert not refused.holds
    assert refused.witness.to_list() == [TOP]
    assert refused.cut_sources == [TOP]
    assert refused.flow_value == refused.cut_capacity == 0


def test_verify_catches_broken_plans():
    mu = make_valuation(V, {BOTTOM: "1/2"})
    nu = make_valuation(V, {"a": "1/4", "b": "1/4"})
    plan = decide_order_maxflow(mu, nu).plan
    plan.entries[(BOTTOM, "a")] = Dyadic(3, 3)
    check = verify_transport_plan(mu, nu, plan)
    assert not check.passes
    assert check.first_violation == f"row sum of {BOTTOM}: 5/8 != 1/2"

    anti = antichain_poset(2)
    mu2 = make_valuation(anti, {"a": "1/2"})
    nu2 = make_valuation(anti, {"b": "1/2"})
    bad = TransportPlan(entries={("a", "b"): Dyadic(1, 1)}, leftover=Dyadic(1, 1))
    assert any(v.startswith("order clause") for v in verify_transport_plan(mu2, nu2, bad).violations)


def test_plan_json_round_trip_and_errors():
    mu = make_valuation(V, {BOTTOM: "1/2"})
    nu = make_valuation(V, {"a": "1/4", "b": "1/4", BOTTOM: "1/4"})
    plan = decide_order_maxflow(mu, nu).plan
    document = plan.to_json()
    assert document["w"] == "1/4"
    assert TransportPlan.from_json(document).entries == plan.entries
    with pytest.raises(ParseError):
        TransportPlan.from_json({"t": {"ab": "1/2"}})


def test_flow_equals_cut_on_random_networks():
    rng = get_rng(5)
    for poset in fixture_posets().values():
        for _ in range(10):
            mu, nu = random_pair(poset, rng)
            network = FlowNetwork(mu, nu)
            result = edmonds_karp(network)
            assert result.value == result.cut_capacity
            assert SOURCE in result.reachable and SINK not in result.reachable


def test_maxflow_agrees_with_oracle():
    rng = get_rng(9)
    for poset in fixture_posets().values():
        for _ in range(40):
            mu, nu = random_pair(poset, rng)
            decision = decide_order_maxflow(mu, nu)
            assert decision.holds == order_oracle(mu, nu).holds
            if decision.holds:
                assert verify_transport_plan(mu, nu, decision.plan).passes
            else:
                members = decision.witness.members
                assert mu.mass(members) > nu.mass(members)


def test_different_posets_are_refused():
    with pytest.raises(DifferentPosets):
        decide_order_maxflow(make_valuation(V, {"a": "1/2"}), make_valuation(DIAMOND, {"a": "1/2"}))


def test_way_below_examples():
    result = decide_way_below(make_valuation(V, {BOTTOM: "1/4"}), make_valuation(V, {"a": "1/2"}))
    assert result.holds and all(result.rules.values())

    delta_a = make_valuation(V, {"a": "1"})
    for rule in (MASS_RULE_STRICT_TOTAL, MASS_RULE_STRICT_PER_ELEMENT):
        assert not decide_way_below(delta_a, delta_a, rule).holds

    mu = make_valuation(V, {BOTTOM: "1/2"})
    nu = make_valuation(V, {"a": "1/4", "b": "3/4"})
    total = decide_way_below(mu, nu, MASS_RULE_STRICT_TOTAL)
    per_element = decide_way_below(mu, nu, MASS_RULE_STRICT_PER_ELEMENT)
    assert total.holds and not per_element.holds
    assert total.rules_disagree
    assert total.to_dict()["mass_rules"] == {MASS_RULE_STRICT_TOTAL: True, MASS_RULE_STRICT_PER_ELEMENT: False}


def test_way_below_uses_only_way_below_edges():
    poset = build_poset(["0", "1"], [("0", "1")], waybelow_pairs=[("0", "1")])
    mu = make_valuation(poset, {"1": "1/4"})
    nu = make_valuation(poset, {"1": "1/2"})
    # 1 is not way below itself, so its mass has nowhere to go
    result = decide_way_below(mu, nu)
    assert not result.flow_ok
    assert result.cut_sources == ["1"]


def test_order_decider_factory():
    mu = make_valuation(V, {BOTTOM: "1/2"})
    nu = make_valuation(V, {"a": "1/4", "b": "1/4"})
    enumeration = get_order_decider("enumeration").decide(mu, nu)
    assert enumeration.holds and enumeration.plan is None
    assert get_order_decider("maxflow").decide(mu, nu).plan is not None
    with pytest.raises(ValueError):
        get_order_decider("simplex")


def test_small_oracle_sweep():
    logger.info("Running a small oracle sweep")
    summary = run_oracle_sweep(pairs_per_poset=25, seed=1)
    assert len(summary) == len(fixture_posets())
    assert sweep_passes(summary)
    assert int(summary["agree"].sum()) == 25 * len(summary)
    assert (summary["holds"] > 0).any()
    assert (summary["disagree"] == 0).all()