import pytest

from services.dyadic import ONE, ZERO, Dyadic, parse_dyadic
from services.errors import OutOfRange
from services.fixtures import get_rng, random_chain_measure
from services.quantile import (
    STATUS_OUTSIDE,
    STATUS_PASS,
    ChainMeasure,
    adjunction_violations,
    bottom_closure,
    cdf,
    cdf_preserves_infima,
    cdf_step_function,
    chain_model,
    chain_order_iso_check,
    quantile,
    quantile_pushforward,
    quantile_step_function,
)

QUARTER = Dyadic(1, 2)
HALF = Dyadic(1, 1)
THREE_QUARTERS = Dyadic(3, 2)


def _measure(masses):
    return ChainMeasure.from_points(masses)


def test_chain_model_adds_the_endpoints():
    poset = chain_model([HALF])
    assert list(poset.elements) == ["0", "1/2", "1"]
    assert poset.least_element() == "0"
    assert poset.leq("1/2", "1")
    with pytest.raises(OutOfRange):
        chain_model([Dyadic(3, 1)])


def test_cdf_and_quantile_values():
    mu = _measure({"1/4": "1/4", "3/4": "3/4"})
    assert [cdf(mu, x) for x in (ZERO, QUARTER, HALF, THREE_QUARTERS, ONE)] == [ZERO, QUARTER, QUARTER, ONE, ONE]
    assert quantile(mu, ZERO) == ZERO
    assert quantile(mu, Dyadic(1, 3)) == QUARTER
    assert quantile(mu, QUARTER) == QUARTER
    assert quantile(mu, HALF) == THREE_QUARTERS
    assert quantile(mu, ONE) == THREE_QUARTERS
    with pytest.raises(OutOfRange):
        cdf(mu, Dyadic(3, 1))


def test_step_functions_are_monotone():
    mu = _measure({"1/4": "1/4", "3/4": "3/4"})
    F = cdf_step_function(mu)
    G = quantile_step_function(mu)
    assert F.is_monotone() and G.is_monotone()
    assert F(HALF) == QUARTER
    assert G(HALF) == THREE_QUARTERS
    assert G.to_json() == {"side": "left", "knots": ["0", "1/4", "1"], "values": ["0", "1/4", "3/4"]}


def test_quantile_pushes_lebesgue_back_to_the_measure():
    mu = _measure({"1/4": "1/4", "3/4": "3/4"})
    pushed = quantile_pushforward(mu)
    assert pushed.measure == mu
    assert not pushed.deviation and pushed.flags == []

    at_zero = _measure({"0": "1"})
    assert quantile_pushforward(at_zero).measure == at_zero


def test_sub_probability_deficit_lands_on_top():
    mu = _measure({"1/2": "1/2"})
    pushed = quantile_pushforward(mu)
    assert pushed.deficit == HALF
    assert pushed.measure == _measure({"1/2": "1/2", "1": "1/2"})
    assert pushed.flags == ["mass 1/2 assigned to ⊤"]
    assert quantile(mu, THREE_QUARTERS) == ONE

    closed = bottom_closure(mu)
    assert closed == _measure({"0": "1/2", "1/2": "1/2"})
    assert quantile_pushforward(closed).measure == closed


def test_galois_connection_on_random_measures():
    rng = get_rng(4)
    for probability in (True, False):
        for _ in range(20):
            mu = random_chain_measure(rng, probability=probability)
            assert cdf_preserves_infima(mu)
            assert adjunction_violations(mu, 5) == []
            if probability:
                assert quantile_pushforward(mu).measure == mu


def test_order_isomorphism_examples():
    low = _measure({"1/4": "1"})
    high = _measure({"3/4": "1"})
    forward = chain_order_iso_check(low, high, 3)
    assert forward.status == STATUS_PASS
    assert forward.valuation_order and forward.quantile_order

    backward = chain_order_iso_check(high, low, 3)
    assert backward.status == STATUS_PASS
    assert not backward.valuation_order and not backward.quantile_order
    assert backward.quantile_witness == ONE
    assert backward.to_dict()["upper_set_witness"] is not None

    uneven = chain_order_iso_check(_measure({"1/2": "1/2"}), _measure({"1/2": "1"}), 3)
    assert uneven.status == STATUS_OUTSIDE


def test_order_isomorphism_on_random_probability_measures():
    rng = get_rng(8)
    for _ in range(30):
        mu, nu = random_chain_measure(rng), random_chain_measure(rng)
        assert chain_order_iso_check(mu, nu, 5).status == STATUS_PASS


def test_from_valuation_keeps_the_carrier():
    mu = ChainMeasure({HALF: QUARTER}, carrier=[QUARTER])
    again = ChainMeasure.from_valuation(mu.valuation)
    assert again == mu
    assert again.carrier == [ZERO, QUARTER, HALF, ONE]
    assert parse_dyadic("1/2") in again.points
