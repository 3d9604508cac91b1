import pytest

from services.cantor import Interval, PartialTreeMap, Word, partial_map_leq
from services.errors import DifferentPosets, NotBoundedComplete
from services.fixtures import BOTTOM, antichain_poset, bounded_complete_posets, get_rng, random_chain, random_partial_map, v_poset
from services.realization import realize_chain, scott_extend
from services.realization.extension import extension_leq, monotonicity_violations, restriction_mismatches
from services.valuation import make_valuation

V = v_poset()


def _v_map():
    return PartialTreeMap(V, 2, [Interval(0, 1, "a"), Interval(1, 2, "b"), Interval(2, 3, BOTTOM)])


def test_extension_of_the_v_map():
    extension = scott_extend(_v_map())
    assert extension.bottom == BOTTOM
    assert extension.value(Word("00")) == "a"
    assert extension.value(Word("0")) == BOTTOM
    assert extension.value(Word("1")) == BOTTOM
    assert extension.value(Word("11")) == BOTTOM
    assert extension.value(Word("010")) == "b"
    assert extension.to_json()[""] == BOTTOM
    assert len(extension.table(3)) == 15


def test_extension_restricts_and_is_monotone():
    rng = get_rng(13)
    for poset in bounded_complete_posets().values():
        for level in (1, 2, 3):
            extension = scott_extend(random_partial_map(poset, rng, level))
            assert restriction_mismatches(extension) == []
            assert monotonicity_violations(extension, up_to_level=level + 1) == []


def test_extension_needs_a_bounded_complete_target():
    anti = antichain_poset(2)
    with pytest.raises(NotBoundedComplete):
        scott_extend(PartialTreeMap(anti, 1, [Interval(0, 1, "a")]))
    with pytest.raises(DifferentPosets):
        scott_extend(_v_map(), poset=anti)


def test_realized_chains_extend_monotonically():
    chain = [
        make_valuation(V, {BOTTOM: "1/2"}),
        make_valuation(V, {BOTTOM: "1/2", "a": "1/4", "b": "1/4"}),
    ]
    result = realize_chain(chain)
    smaller, larger = (scott_extend(f) for f in result.maps)
    assert extension_leq(smaller, larger) == []

    rng = get_rng(17)
    for poset in bounded_complete_posets().values():
        result = realize_chain(random_chain(poset, rng, 3, denominator=8))
        extensions = [scott_extend(f) for f in result.maps]
        for lower, upper in zip(extensions, extensions[1:]):
            assert extension_leq(lower, upper) == []


def test_partial_map_order_alone_does_not_order_extensions():
    f = PartialTreeMap(V, 1, [Interval(0, 1, "a")])
    g = PartialTreeMap(V, 2, [Interval(0, 1, "a")])
    assert partial_map_leq(f, g)
    assert extension_leq(scott_extend(f), scott_extend(g)) == [Word("0"), Word("01")]
