import pytest

from services.cantor import PartialTreeMap, Word, level_words, pushforward
from services.dyadic import ONE, Dyadic
from services.errors import DepthTooSmall, DifferentPosets, InvariantViolation, NotAChain, OutOfRange
from services.fixtures import (
    BOTTOM,
    antichain_poset,
    example_flat_sequence,
    fixture_posets,
    flat_poset,
    get_rng,
    random_chain,
    v_poset,
)
from services.realization import (
    RealizationResult,
    check_realization,
    empirical_convergence,
    evaluate_limit,
    realize_chain,
)
from services.valuation import dirac, make_valuation

V = v_poset()


def _v_chain():
    return [
        make_valuation(V, {BOTTOM: "1/2"}),
        make_valuation(V, {BOTTOM: "1/2", "a": "1/4", "b": "1/4"}),
    ]


def test_v_chain_realization():
    chain = _v_chain()
    result = realize_chain(chain)
    assert result.levels == [1, 2]
    assert check_realization(result, chain) == []
    assert result.maps[1].assignment() == {
        Word("00"): "a", Word("01"): "b", Word("10"): BOTTOM, Word("11"): BOTTOM,
    }


def test_flat_chain_levels():
    flat = flat_poset()
    chain = [make_valuation(flat, {"0": "1/4"}), make_valuation(flat, {"0": "3/4", "1": "1/4"})]
    result = realize_chain(chain)
    assert result.levels == [2, 3]
    assert pushforward(result.maps[1]) == chain[1]
    assert check_realization(result, chain) == []


def test_random_chains_are_realized_exactly():
    rng = get_rng(21)
    for poset in fixture_posets().values():
        for length in (1, 2, 4):
            chain = random_chain(poset, rng, length, denominator=16)
            result = realize_chain(chain)
            assert check_realization(result, chain) == []
            assert all(a < b for a, b in zip(result.levels, result.levels[1:]))


def test_chain_must_be_increasing():
    anti = antichain_poset(2)
    with pytest.raises(NotAChain) as info:
        realize_chain([dirac(anti, "a", Dyadic(1, 1)), dirac(anti, "b", Dyadic(1, 1))])
    assert info.value.position == 1
    assert info.value.witness.to_list() == ["a"]
    with pytest.raises(DifferentPosets):
        realize_chain([dirac(anti, "a", Dyadic(1, 1)), dirac(V, "a", Dyadic(1, 1))])
    with pytest.raises(InvariantViolation):
        realize_chain([])


def test_check_realization_reports_broken_results():
    chain = _v_chain()
    result = realize_chain(chain)
    flat_levels = RealizationResult(poset=V, levels=[2, 2], maps=result.maps, plans=result.plans)
    assert check_realization(flat_levels, chain) == ["levels not increasing at 2"]
    stalled = RealizationResult(poset=V, levels=[1, 2], maps=[result.maps[0]] * 2, plans=result.plans)
    assert check_realization(stalled, chain) == ["pushforward of map 2 differs from measure 2"]
    assert check_realization(result, chain[:1]) == ["2 maps for a chain of 1"]


def test_realization_json_round_trip():
    result = realize_chain(_v_chain())
    restored = RealizationResult.from_json(V, result.to_json())
    assert restored.levels == result.levels
    assert restored.maps == result.maps
    assert [p.entries for p in restored.plans] == [p.entries for p in result.plans]


def test_evaluate_limit():
    result = realize_chain(_v_chain())
    assert evaluate_limit(result, Word("01")) == "b"
    assert evaluate_limit(result, Word("0011")) == "a"
    assert evaluate_limit(result, Word("11")) == BOTTOM
    with pytest.raises(DepthTooSmall):
        evaluate_limit(result, Word("0"))

    partial = realize_chain([make_valuation(V, {"a": "1/2"})])
    assert evaluate_limit(partial, Word("1")) is None


def test_evaluate_limit_refuses_maps_without_a_supremum():
    anti = antichain_poset(2)
    f = PartialTreeMap.from_assignment(anti, 1, {Word("0"): "a"})
    g = PartialTreeMap.from_assignment(anti, 2, {Word("00"): "b"})
    crossed = RealizationResult(poset=anti, levels=[1, 2], maps=[f, g])
    assert evaluate_limit(crossed, Word("01")) == "a"
    assert evaluate_limit(crossed, Word("10")) is None
    with pytest.raises(InvariantViolation):
        evaluate_limit(crossed, Word("00"))


def test_flat_example_limit_map():
    example = example_flat_sequence(10)
    limit = realize_chain(example.limit_chain)
    assert limit.levels == list(range(1, 11))
    assert evaluate_limit(limit, Word("1" * 10)) == BOTTOM
    assert evaluate_limit(limit, Word("1" * 9 + "0")) == "0"
    assert pushforward(limit.maps[-1]) == example.limit_chain[-1]


def test_flat_example_converges_almost_surely():
    example = example_flat_sequence(10)
    results = [realize_chain([mu]) for mu in example.sequence]
    limit = realize_chain(example.limit_chain)
    for tail in (1, 3, 10):
        certificate = empirical_convergence(results, limit, depth=10, tail=tail)
        assert certificate.exception_mass == Dyadic.half_power(tail)
        assert certificate.domain_mass == ONE
        assert Word("1" * 10) in certificate.exception_words
    assert empirical_convergence(results, limit, depth=10, tail=2).to_dict()["exception_count"] == 256


def test_constant_sequence_has_no_exceptions():
    chain = _v_chain()
    result = realize_chain(chain)
    certificate = empirical_convergence([result] * 3, result, depth=3)
    assert certificate.exception_words == []
    assert certificate.domain_words == len(level_words(3))


def test_convergence_argument_checks():
    result = realize_chain(_v_chain())
    with pytest.raises(OutOfRange):
        empirical_convergence([], result, depth=3)
    with pytest.raises(OutOfRange):
        empirical_convergence([result], result, depth=3, tail=2)
    with pytest.raises(DepthTooSmall):
        empirical_convergence([result], result, depth=1)
