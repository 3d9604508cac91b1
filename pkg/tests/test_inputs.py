import json
from pathlib import Path

import pytest

from services.dyadic import Dyadic
from services.errors import InputError, InvariantViolation, ParseError
from services.fixtures import BOTTOM
from services.workflow.task_handle_inputs import DocumentLoader, document_kind, parse_input

FIXTURES = Path(__file__).resolve().parent.parent / "storage" / "fixtures"


def _fixture(name: str) -> str:
    return str(FIXTURES / name)


def _write(tmp_path: Path, name: str, document) -> str:
    path = tmp_path / name
    path.write_text(document if isinstance(document, str) else json.dumps(document), encoding="utf-8")
    return str(path)


def test_valuations_share_their_poset_file():
    parsed = parse_input([_fixture("mu_half_bottom.json"), _fixture("nu_quarter_ab.json")])
    mu, nu = parsed.valuations
    assert mu.poset is nu.poset
    assert mu.weight(BOTTOM) == Dyadic(1, 1)
    assert nu.total_mass == Dyadic(1, 1)


def test_document_kinds():
    assert document_kind({"elements": []}) == "poset"
    assert document_kind({"poset": "x", "mass": {}}) == "valuation"
    assert document_kind({"poset": "x", "chain": []}) == "chain"
    assert document_kind({"poset": "x", "sequence": [], "limit": {}}) == "sequence"
    assert document_kind({"poset": "x", "level": 1, "intervals": []}) == "partial_map"
    assert document_kind({"command": "order"}) == "certificate"
    with pytest.raises(ParseError):
        document_kind({"weights": {}})
    with pytest.raises(ParseError):
        document_kind([1, 2])


def test_chains_maps_and_sequences_load():
    parsed = parse_input([_fixture("v-chain.json"), _fixture("v-map.json"), _fixture("example-flat.json")])
    assert len(parsed.chains[0]) == 2
    assert parsed.maps[0].level == 2
    assert parsed.maps[0].domain_size() == 3
    sequence = parsed.sequences[0]
    assert len(sequence.sequence) == 10
    assert len(sequence.limit_chain) == 10
    assert sequence.limit.weight("0") == 1


def test_chain_poset_is_built_from_the_masses():
    loader = DocumentLoader()
    mu = loader.load_valuation(_fixture("quarter_three_quarters.json"))
    assert list(mu.poset.elements) == ["0", "1/4", "3/4", "1"]
    assert mu.weight("3/4") == Dyadic(1, 1)


def test_inline_posets_and_canonical_point_names(tmp_path):
    path = _write(tmp_path, "inline.json", {"poset": "chain", "mass": {"2/4": "1/2"}})
    mu = DocumentLoader().load_valuation(path)
    assert mu.weight("1/2") == Dyadic(1, 1)

    inline = {"poset": {"elements": ["x", "y"], "covers": [["x", "y"]], "bottom": "x"}, "mass": {"y": "1"}}
    nu = DocumentLoader().load_valuation(_write(tmp_path, "nu.json", inline))
    assert nu.poset.leq("x", "y")


def test_malformed_documents_name_the_problem(tmp_path):
    with pytest.raises(ParseError) as info:
        parse_input([_write(tmp_path, "broken.json", '{"poset": "chain",\n "mass": }')])
    assert info.value.line == 2

    with pytest.raises(ParseError) as info:
        parse_input([_write(tmp_path, "third.json", {"poset": "chain", "mass": {"1/2": "1/3"}})])
    assert "1/3" in str(info.value)

    with pytest.raises(ParseError) as info:
        DocumentLoader().poset_from_document({"elements": ["a"], "covers": [["a"]]})
    assert info.value.field == "covers[0]"

    with pytest.raises(ParseError) as info:
        parse_input([_write(tmp_path, "level.json", {"poset": "chain", "level": "2", "intervals": []})])
    assert info.value.field == "level"


def test_invariants_and_missing_files(tmp_path):
    heavy = {"poset": {"elements": ["a"]}, "mass": {"a": "3/2"}}
    with pytest.raises(InvariantViolation):
        parse_input([_write(tmp_path, "heavy.json", heavy)])
    with pytest.raises(InputError):
        parse_input([str(tmp_path / "missing.json")])
