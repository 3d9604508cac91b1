import pytest

from services.errors import BottomNotLeast, CycleDetected, DuplicateIdentifier, InvariantViolation, SizeLimit, UnknownIdentifier
from services.fixtures import BOTTOM, TOP, antichain_poset, chain_poset, diamond_poset, fixture_posets, flat_poset, n_poset, v_poset
from services.poset import build_poset, classify, enumerate_upper_sets, infimum, supremum


def test_order_is_the_closure_of_the_covers():
    p = diamond_poset()
    assert p.leq(BOTTOM, TOP)
    assert p.leq("a", "a")
    assert not p.leq("a", "b")
    assert p.lt(BOTTOM, "a")
    assert not p.comparable("a", "b")
    assert p.up("a") == frozenset({"a", TOP})
    assert p.down(TOP) == frozenset(p.elements)


def test_build_rejects_bad_input():
    with pytest.raises(CycleDetected):
        build_poset(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(DuplicateIdentifier):
        build_poset(["x", "x"])
    with pytest.raises(UnknownIdentifier):
        build_poset(["x"], [("x", "z")])
    with pytest.raises(BottomNotLeast):
        build_poset(["x", "y"], bottom="x")


def test_waybelow_defaults_to_order_and_absorbs():
    p = v_poset()
    assert p.waybelow(BOTTOM, "a") and p.waybelow("a", "a")

    q = build_poset(["0", "1", "2"], [("0", "1"), ("1", "2")], waybelow_pairs=[("0", "1")])
    assert q.waybelow("0", "2")
    assert not q.waybelow("1", "1")
    assert not classify(q).waybelow_is_leq
    with pytest.raises(InvariantViolation):
        build_poset(["a", "b"], waybelow_pairs=[("a", "b")])


def test_upper_sets_of_the_v_poset():
    upper_sets = enumerate_upper_sets(v_poset())
    assert [u.to_list() for u in upper_sets] == [[], ["a"], ["b"], ["a", "b"], [BOTTOM, "a", "b"]]


def test_upper_set_counts_match_known_values():
    assert len(enumerate_upper_sets(chain_poset(4))) == 5
    assert len(enumerate_upper_sets(antichain_poset(3))) == 8
    assert len(enumerate_upper_sets(diamond_poset())) == 6
    for poset in fixture_posets().values():
        for u in enumerate_upper_sets(poset):
            assert poset.up_closure(u.members) == u.members


def test_enumeration_refuses_large_posets():
    with pytest.raises(SizeLimit):
        enumerate_upper_sets(antichain_poset(5), limit=4)


def test_upper_set_validation():
    p = v_poset()
    assert p.upper_set(["a"]).to_list() == ["a"]
    with pytest.raises(InvariantViolation):
        p.upper_set([BOTTOM])
    assert p.principal(BOTTOM).to_list() == [BOTTOM, "a", "b"]


def test_infimum_and_supremum():
    p = diamond_poset()
    assert infimum(p, ["a", "b"]) == BOTTOM
    assert supremum(p, ["a", "b"]) == TOP
    assert infimum(p, ["a"]) == "a"
    n = n_poset()
    assert infimum(n, list(n.elements)) is None
    assert supremum(n, ["a", "b"]) == "c"
    assert supremum(n, ["c", "d"]) is None
    with pytest.raises(ValueError):
        infimum(p, [])


def test_minimal_and_maximal_elements():
    p = diamond_poset()
    assert p.minimal_elements(["a", "b", TOP]) == ["a", "b"]
    assert p.maximal_elements([BOTTOM, "a", "b"]) == ["a", "b"]
    assert p.minimal_elements(p.elements) == [BOTTOM]
    assert p.maximal_elements([]) == []
    n = n_poset()
    assert n.minimal_elements(n.elements) == ["a", "b"]
    assert n.maximal_elements(n.elements) == ["c", "d"]


def test_classify_fixture_shapes():
    assert classify(chain_poset(3)).is_chain
    flags = classify(flat_poset())
    assert flags.is_flat and flags.has_bottom and flags.is_bounded_complete
    assert not classify(antichain_poset(2)).is_bounded_complete
    assert classify(diamond_poset()).is_bounded_complete
    assert not classify(n_poset()).has_bottom


def test_document_rebuilds_the_same_poset():
    p = diamond_poset()
    document = p.to_document()
    assert document["bottom"] == BOTTOM
    assert build_poset(document["elements"], document["covers"], bottom=document["bottom"]) == p
    assert p.linear_extension()[0] == BOTTOM
