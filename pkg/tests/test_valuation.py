import pytest

from services.dyadic import ONE, ZERO, Dyadic, parse_dyadic
from services.errors import (
    ForeignUpperSet,
    InvariantViolation,
    MissingValue,
    NonDyadicWeight,
    NotMonotone,
    OutOfRange,
    ParseError,
    UnknownIdentifier,
)
from services.fixtures import BOTTOM, antichain_poset, example_flat_sequence, fixture_posets, get_rng, random_valuation, v_poset
from services.poset import enumerate_upper_sets
from services.valuation import (
    LIMINF_CONDITION,
    MonotoneFunction,
    SimpleValuation,
    dirac,
    indicator,
    integrate_monotone,
    make_valuation,
    order_oracle,
    portmanteau_check,
    valuation_mass,
    zero_valuation,
)

V = v_poset()


def test_weights_are_validated():
    mu = make_valuation(V, {"a": "1/2", "b": "0", BOTTOM: "1/4"})
    assert mu.support() == [BOTTOM, "a"]
    assert mu.total_mass == parse_dyadic("3/4")
    with pytest.raises(ParseError):
        make_valuation(V, {"a": "1/3"})
    with pytest.raises(InvariantViolation) as info:
        make_valuation(V, {"a": "5/8", "b": "1/2"})
    assert info.value.invariant == "total mass <= 1"
    with pytest.raises(UnknownIdentifier):
        make_valuation(V, {"z": "1/2"})
    with pytest.raises(NonDyadicWeight):
        SimpleValuation(V, {"a": 0.5})
    with pytest.raises(InvariantViolation):
        make_valuation(V, {"a": "-1/2"})


def test_valuation_mass_examples():
    mu = make_valuation(V, {"a": "1/2", BOTTOM: "1/4"})
    assert valuation_mass(mu, V.upper_set(["a"])) == Dyadic(1, 1)
    assert valuation_mass(mu, V.upper_set([])) == ZERO
    nu = make_valuation(V, {"a": "1/4", "b": "1/4", BOTTOM: "1/2"})
    assert valuation_mass(nu, V.upper_set(["a", "b"])) == Dyadic(1, 1)
    with pytest.raises(ForeignUpperSet):
        valuation_mass(mu, antichain_poset(2).upper_set(["a"]))


def test_order_oracle_examples():
    assert order_oracle(make_valuation(V, {BOTTOM: "1/2"}), make_valuation(V, {"a": "1/4", "b": "1/4"})).holds
    anti = antichain_poset(2)
    result = order_oracle(dirac(anti, "a", Dyadic(1, 1)), dirac(anti, "b", Dyadic(1, 1)))
    assert not result.holds
    assert result.witness.to_list() == ["a"]
    assert order_oracle(zero_valuation(V), make_valuation(V, {"b": "1/8"})).holds


def test_order_oracle_is_a_partial_order():
    rng = get_rng(7)
    for poset in fixture_posets().values():
        for _ in range(20):
            mu, nu, xi = (random_valuation(poset, rng, 8) for _ in range(3))
            assert order_oracle(mu, mu).holds
            if order_oracle(mu, nu).holds and order_oracle(nu, mu).holds:
                assert mu == nu
            if order_oracle(mu, nu).holds and order_oracle(nu, xi).holds:
                assert order_oracle(mu, xi).holds
            if order_oracle(mu, nu).holds:
                assert mu.total_mass <= nu.total_mass


def test_mass_is_modular():
    rng = get_rng(11)
    for poset in fixture_posets().values():
        upper_sets = enumerate_upper_sets(poset)
        mu = random_valuation(poset, rng)
        for _ in range(10):
            u = upper_sets[int(rng.integers(0, len(upper_sets)))]
            w = upper_sets[int(rng.integers(0, len(upper_sets)))]
            assert valuation_mass(mu, u.union(w)) + valuation_mass(mu, u.intersection(w)) == \
                valuation_mass(mu, u) + valuation_mass(mu, w)


def test_integrals_of_monotone_functions():
    mu = make_valuation(V, {BOTTOM: "1/2"})
    constant = MonotoneFunction(V, {x: ONE for x in V.elements})
    assert integrate_monotone(mu, constant) == Dyadic(1, 1)
    nu = make_valuation(V, {"a": "1/4", "b": "1/4"})
    assert integrate_monotone(nu, indicator(V.upper_set(["a"]))) == Dyadic(1, 2)
    assert integrate_monotone(zero_valuation(V), constant) == ZERO
    with pytest.raises(NotMonotone):
        MonotoneFunction(V, {BOTTOM: ONE, "a": ZERO})
    with pytest.raises(MissingValue):
        integrate_monotone(mu, MonotoneFunction(V, {"a": ONE}))


def test_order_matches_indicator_integrals():
    rng = get_rng(3)
    for poset in fixture_posets().values():
        upper_sets = enumerate_upper_sets(poset)
        for _ in range(10):
            mu, nu = random_valuation(poset, rng), random_valuation(poset, rng)
            by_integrals = all(
                integrate_monotone(mu, indicator(u)) <= integrate_monotone(nu, indicator(u)) for u in upper_sets
            )
            assert order_oracle(mu, nu).holds == by_integrals


def test_portmanteau_on_the_flat_example():
    example = example_flat_sequence(10)
    certificate = portmanteau_check(example.sequence, example.limit, horizon=5, tolerance=Dyadic(1, 5))
    assert certificate.passes
    strict = portmanteau_check(example.sequence, example.limit, horizon=5, tolerance=ZERO)
    assert not strict.passes


def test_portmanteau_constant_sequence_and_failure():
    mu = make_valuation(V, {"a": "1/2", BOTTOM: "1/4"})
    assert portmanteau_check([mu] * 4, mu, horizon=2, tolerance=ZERO).passes

    anti = antichain_poset(2)
    certificate = portmanteau_check([dirac(anti, "a")] * 3, dirac(anti, "b"), horizon=1, tolerance=ZERO)
    assert not certificate.passes
    liminf = [v for v in certificate.violations if v.condition == LIMINF_CONDITION]
    assert liminf[0].witness.to_list() == ["b"]


def test_portmanteau_rejects_bad_horizon():
    mu = make_valuation(V, {"a": "1/2"})
    with pytest.raises(OutOfRange):
        portmanteau_check([mu, mu], mu, horizon=3, tolerance=ZERO)
    with pytest.raises(OutOfRange):
        portmanteau_check([], mu, horizon=1, tolerance=ZERO)
