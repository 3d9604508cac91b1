import pytest

from services.cantor import Word, level_words
from services.dyadic import ONE, ZERO, Dyadic
from services.errors import DepthTooSmall, OutOfRange
from services.fixtures import BOTTOM, example_flat_sequence, v_poset
from services.realization import (
    cantor_value,
    cylinder_pushforward_check,
    grid_pushforward,
    realize_chain,
    skorohod_compose,
    unit_adjoint,
)
from services.realization.adjoint import adjoint_value, adjunction_holds, grid_cells
from services.valuation import make_valuation


def test_unit_adjoint_values():
    assert unit_adjoint(ZERO, 4) == Word("0000")
    assert unit_adjoint(ONE, 3) == Word("111")
    assert unit_adjoint(Dyadic(1, 1), 4) == Word("0111")
    assert unit_adjoint(Dyadic(3, 2), 3) == Word("101")
    assert unit_adjoint(Dyadic(3, 2), 4) == Word("1011")
    assert unit_adjoint(Dyadic(3, 3), 3) == Word("010")
    assert unit_adjoint(Dyadic(1, 4), 4) == Word("0000")
    with pytest.raises(OutOfRange):
        unit_adjoint(Dyadic(1, 4), 3)
    with pytest.raises(OutOfRange):
        unit_adjoint(Dyadic(3, 1), 3)
    with pytest.raises(OutOfRange):
        unit_adjoint(Dyadic(-1, 2), 3)


def test_adjoint_is_a_section_on_the_grid():
    for k in range((1 << 4) + 1):
        r = Dyadic(k, 4)
        assert adjoint_value(r, 4) == r
    assert cantor_value(Word("011"), tail=1) == Dyadic(1, 1)
    assert cantor_value(Word("011")) == Dyadic(3, 3)


def test_adjunction_on_the_grid():
    for k in range((1 << 4) + 1):
        r = Dyadic(k, 4)
        for word in level_words(3):
            assert adjunction_holds(r, word)


def test_grid_cells_are_words_in_order():
    cells = grid_cells(3)
    assert [word for _, _, word in cells] == level_words(3)
    assert cells[0][:2] == (ZERO, Dyadic(1, 3))


def test_cylinder_pushforward_check_passes():
    check = cylinder_pushforward_check(4)
    assert check.passes
    assert check.witness is None
    assert len(check.cylinders) == 31
    assert all(record.contiguous for record in check.cylinders)
    assert check.to_dict()["cylinders_checked"] == 31
    with pytest.raises(DepthTooSmall):
        cylinder_pushforward_check(0)


def test_skorohod_on_the_v_chain():
    v = v_poset()
    chain = [
        make_valuation(v, {BOTTOM: "1/2"}),
        make_valuation(v, {BOTTOM: "1/2", "a": "1/4", "b": "1/4"}),
    ]
    result = realize_chain(chain)
    assert skorohod_compose(result, Dyadic(1, 2), 2) == "a"
    assert skorohod_compose(result, Dyadic(1, 1), 2) == "b"
    assert skorohod_compose(result, ONE, 3) == BOTTOM
    grid = grid_pushforward(result, 2)
    assert grid.measure == chain[-1]
    assert grid.undefined_mass == ZERO
    with pytest.raises(DepthTooSmall):
        skorohod_compose(result, ONE, 1)


def test_grid_pushforward_of_the_flat_limit():
    example = example_flat_sequence(10)
    limit = realize_chain(example.limit_chain)
    grid = grid_pushforward(limit, 10)
    assert grid.measure == example.limit_chain[-1]
    assert skorohod_compose(limit, ONE, 10) == BOTTOM

    partial = realize_chain([make_valuation(example.poset, {"1": "1/2"})])
    assert grid_pushforward(partial, 3).undefined_mass == Dyadic(1, 1)
