import json

from services import logs
from services.constants import EXIT_OK, EXIT_REFUSED
from services.utils import canonical_json, digest
from services.workflow import Decision, certificate_text, emit_certificate
from services.workflow.certificates import build_certificate
from services.workflow.data_model import TranscriptEntry


def _certificate(decision=Decision.HOLDS):
    return build_certificate(
        "order",
        {"provider": "maxflow"},
        {"poset": {"elements": ["⊥", "a"]}, "mu": {"⊥": "1/2"}, "nu": {"a": "1/2"}},
        decision,
        {"plan": {"t": {"⊥|a": "1/2"}, "u": {}, "w": "1/2"}},
        [TranscriptEntry("transport plan satisfies every clause", True)],
    )


def test_digest_ignores_key_order():
    assert digest({"b": 1, "a": [1, 2]}) == digest({"a": [1, 2], "b": 1})
    assert digest({"a": [1, 2]}) != digest({"a": [2, 1]})
    assert digest({}).startswith("sha256:")


def test_canonical_text_is_sorted_and_readable():
    text = certificate_text(_certificate())
    assert text.endswith("}\n")
    assert "⊥" in text
    document = json.loads(text)
    assert list(document) == sorted(document)
    assert document["inputs_digest"] == digest(document["inputs"])
    assert document["transcript"] == [{"check": "transport plan satisfies every clause", "passed": True}]
    assert canonical_json(document) + "\n" == text


def test_exit_codes_follow_the_decision():
    assert _certificate(Decision.HOLDS).exit_code == EXIT_OK
    assert _certificate(Decision.PASS_WITH_DEVIATION).exit_code == EXIT_OK
    for decision in (Decision.FAILS, Decision.FAIL, Decision.OUTSIDE_HYPOTHESIS, Decision.UNVERIFIABLE):
        assert _certificate(decision).exit_code == EXIT_REFUSED


def test_emit_to_stdout_and_file(tmp_path, capsys):
    logs.clear_logs()
    certificate = _certificate()
    assert emit_certificate(certificate) == EXIT_OK
    assert capsys.readouterr().out == certificate_text(certificate)

    sink = tmp_path / "nested" / "order.json"
    assert emit_certificate(_certificate(Decision.FAILS), str(sink)) == EXIT_REFUSED
    assert json.loads(sink.read_text(encoding="utf-8"))["decision"] == "fails"

    latest = logs.get_latest_log()
    assert latest["sink"] == str(sink)
    assert latest["decision"] == "fails"
    assert {entry["sink"] for entry in logs.get_all_logs()} == {"stdout", str(sink)}
    assert "timestamp" not in certificate_text(certificate)
    logs.clear_logs()
    assert logs.get_latest_log() is None
