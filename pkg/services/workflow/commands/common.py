# ------------------------------
# Module: common.py
# Description: Transcript and rebuild helpers shared by the commands
# ------------------------------

from typing import List

from services.dyadic import format_dyadic
from services.poset import FinitePoset, UpperSet
from services.valuation import SimpleValuation, make_valuation
from services.workflow.data_model import Decision, Recheck, TranscriptEntry
from services.workflow.task_handle_inputs import DocumentLoader


def entry(check: str, passed: bool, detail: str = None) -> TranscriptEntry:
    return TranscriptEntry(check=check, passed=bool(passed), detail=detail)


def embed_valuations(poset: FinitePoset, **valuations: SimpleValuation) -> dict:
    inputs = {"poset": poset.to_document()}
    for name, mu in valuations.items():
        inputs[name] = mu.to_mass_map()
    return inputs


def rebuild_poset(document: dict) -> FinitePoset:
    return DocumentLoader().poset_from_document(document)


def rebuild_valuations(poset: FinitePoset, masses: List[dict]) -> List[SimpleValuation]:
    return [make_valuation(poset, m) for m in masses]


def separation_entry(mu: SimpleValuation, nu: SimpleValuation, upper: UpperSet, label: str = "U") -> TranscriptEntry:
    m, n = mu.mass(upper.members), nu.mass(upper.members)
    return entry(
        f"witness separates: mu({label}) > nu({label})",
        m > n,
        f"mu({label}) = {format_dyadic(m)}, nu({label}) = {format_dyadic(n)}",
    )


def recheck_result(decision: Decision, transcript: List[TranscriptEntry]) -> Recheck:
    return Recheck(decision=decision, transcript=transcript)
