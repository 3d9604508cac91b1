import pytest

from services.cantor import (
    CountingMeasure,
    Interval,
    LevelAntichain,
    PartialTreeMap,
    Word,
    covers_domain,
    embed,
    level_words,
    partial_map_leq,
    project,
    projected_counting,
    pushforward,
)
from services.dyadic import Dyadic
from services.errors import InvariantViolation, LevelMismatch, LevelTooSmall, ParseError, UnknownIdentifier
from services.fixtures import BOTTOM, v_poset

V = v_poset()


def _map(level, *pieces):
    return PartialTreeMap(V, level, [Interval(lo, hi, image) for lo, hi, image in pieces])


def test_words_and_levels():
    w = Word("101")
    assert w.level == 3 and w.index == 5
    assert Word.from_index(5, 3) == w
    assert Word.from_index(0, 0) == Word("")
    assert Word("10").is_prefix_of(w)
    assert not Word("11").is_prefix_of(w)
    assert [str(x) for x in level_words(2)] == ["00", "01", "10", "11"]
    with pytest.raises(ParseError):
        Word("012")


def test_project_and_embed():
    w = Word("0110")
    assert project(w, 2) == Word("01")
    assert project(w, 9) == w
    assert embed(Word("1"), 3) == Word("100")
    assert project(embed(Word("1"), 3), 1) == Word("1")
    with pytest.raises(LevelTooSmall):
        embed(w, 2)


def test_counting_measure():
    c = CountingMeasure(3)
    assert c.per_word_mass == Dyadic(1, 3)
    assert c.mass(level_words(3)[:2]) == Dyadic(1, 2)
    assert c.mass([Word("1")]) == 0
    assert c.cylinder_mass(Word("1")) == Dyadic(1, 1)
    assert c.cylinder_mass(Word("10"), depth=5) == Dyadic(1, 2)
    with pytest.raises(LevelTooSmall):
        c.cylinder_mass(Word("1010"))
    assert projected_counting(3, 1) == {Word("0"): Dyadic(1, 1), Word("1"): Dyadic(1, 1)}


def test_partial_maps_merge_and_validate():
    f = _map(2, (0, 1, "a"), (1, 2, "a"), (3, 4, BOTTOM))
    assert f.intervals == (Interval(0, 2, "a"), Interval(3, 4, BOTTOM))
    assert f.value(Word("01")) == "a"
    assert f.value(Word("10")) is None
    assert Word("11") in f and Word("10") not in f
    assert f.domain_size() == 3
    assert f.covers(0, 2) and not f.covers(0, 4)
    with pytest.raises(LevelMismatch):
        f.value(Word("0"))
    with pytest.raises(InvariantViolation):
        _map(2, (0, 2, "a"), (1, 3, "b"))
    with pytest.raises(InvariantViolation):
        _map(1, (0, 3, "a"))
    with pytest.raises(UnknownIdentifier):
        _map(1, (0, 1, "z"))


def test_assignment_round_trip():
    f = _map(2, (0, 1, "a"), (2, 4, "b"))
    assert PartialTreeMap.from_assignment(V, 2, f.assignment()) == f
    assert PartialTreeMap.from_json(V, 2, f.to_json()) == f
    with pytest.raises(ParseError):
        PartialTreeMap.from_json(V, 2, [{"image": "a"}])


def test_pushforward_is_exact():
    f = _map(2, (0, 1, "a"), (1, 2, "b"), (2, 3, BOTTOM))
    mu = pushforward(f)
    assert {x: str(w) for x, w in mu.items()} == {BOTTOM: "1/4", "a": "1/4", "b": "1/4"}
    assert pushforward(_map(3)).total_mass == 0


def test_partial_map_order():
    f = _map(1, (0, 1, BOTTOM))
    assert partial_map_leq(f, f)
    assert partial_map_leq(f, _map(2, (0, 1, "a")))
    assert not partial_map_leq(f, _map(2, (2, 3, "a")))
    assert not partial_map_leq(_map(1, (0, 1, "a")), _map(2, (0, 2, "b")))
    assert partial_map_leq(_map(1), _map(1, (1, 2, "b")))
    with pytest.raises(LevelMismatch):
        partial_map_leq(_map(2), f)


def test_covers_domain():
    f = _map(1, (0, 1, BOTTOM))
    assert not covers_domain(f, _map(2, (0, 1, "a")))
    assert covers_domain(f, _map(2, (0, 1, "a"), (1, 2, "b")))


def test_level_antichain_backs_partial_maps():
    antichain = LevelAntichain(2)
    assert len(antichain) == 4
    assert antichain.members == level_words(2)
    assert Word("01") in antichain and Word("0") not in antichain
    f = _map(2, (0, 1, "a"))
    assert f.antichain == antichain
    with pytest.raises(InvariantViolation):
        _map(2, (3, 5, "a"))
