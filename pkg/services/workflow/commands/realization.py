# ------------------------------
# Module: realization.py
# Description: realize and extend commands and their re-checks
# ------------------------------

import logging
from typing import Dict, List

from services.cantor import PartialTreeMap, Word, partial_map_leq, pushforward
from services.errors import NotAChain
from services.poset import FinitePoset, classify
from services.realization import RealizationResult, realize_chain, scott_extend
from services.realization.chain import check_realization
from services.transport.plan import verify_transport_plan
from services.valuation import SimpleValuation
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import (
    entry,
    rebuild_poset,
    rebuild_valuations,
    recheck_result,
    separation_entry,
)
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck, TranscriptEntry

logger = logging.getLogger(__name__)


# :::::: realize :::::: #

def _chain_inputs(chain: List[SimpleValuation]) -> dict:
    return {
        "poset": chain[0].poset.to_document(),
        "chain": [mu.to_mass_map() for mu in chain],
    }


def _realization_entries(result: RealizationResult, chain: List[SimpleValuation]) -> List[TranscriptEntry]:
    transcript = []
    for i in range(1, len(result.levels)):
        transcript.append(entry(
            f"level {i + 1} is deeper than level {i}",
            result.levels[i] > result.levels[i - 1],
            f"{result.levels[i - 1]} < {result.levels[i]}",
        ))
    for i, (f, mu) in enumerate(zip(result.maps, chain), start=1):
        transcript.append(entry(f"pushforward of map {i} equals measure {i}", pushforward(f) == mu))
    for i in range(1, len(result.maps)):
        transcript.append(entry(f"map {i} is below map {i + 1}", partial_map_leq(result.maps[i - 1], result.maps[i])))
    for i, plan in enumerate(result.plans, start=1):
        check = verify_transport_plan(chain[i - 1], chain[i], plan)
        transcript.append(entry(f"plan {i} transports measure {i} into measure {i + 1}", check.passes, check.first_violation))
    return transcript


def run_realize(chain: List[SimpleValuation], options: CommandOptions) -> Certificate:
    '''
      Realize an increasing chain as partial maps on the Cantor tree.

      A pair that is not ordered gives a refusal certificate carrying the
      position of the pair and its separating upper set, not an error.
    '''
    logger.info(f"Realizing a chain of {len(chain)} valuations")
    inputs = _chain_inputs(chain)
    try:
        result = realize_chain(chain)
    except NotAChain as e:
        i = e.position
        witnesses = {"pair": [i, i + 1], "witness": e.witness.to_list()}
        transcript = [separation_entry(chain[i - 1], chain[i], e.witness, label="U")]
        return build_certificate(Command.REALIZE.value, {}, inputs, Decision.FAILS, witnesses, transcript)

    witnesses = {
        "realization": result.to_json(),
        "pushforwards": [pushforward(f).to_mass_map() for f in result.maps],
    }
    transcript = _realization_entries(result, chain)
    decision = Decision.HOLDS if all(t.passed for t in transcript) else Decision.FAILS
    return build_certificate(Command.REALIZE.value, {}, inputs, decision, witnesses, transcript)


def recheck_realize(certificate: dict) -> Recheck:
    inputs = certificate["inputs"]
    poset = rebuild_poset(inputs["poset"])
    chain = rebuild_valuations(poset, inputs["chain"])
    witnesses = certificate["witnesses"]

    if "realization" not in witnesses:
        first, second = witnesses["pair"]
        separation = separation_entry(chain[first - 1], chain[second - 1], poset.upper_set(witnesses["witness"]))
        return recheck_result(Decision.FAILS if separation.passed else Decision.UNVERIFIABLE, [separation])

    result = RealizationResult.from_json(poset, witnesses["realization"])
    problems = check_realization(result, chain)
    transcript = [entry("realization reproduces the chain", not problems, "; ".join(problems) or None)]
    transcript.extend(_realization_entries(result, chain) if not problems else [])
    return recheck_result(Decision.HOLDS if not problems else Decision.UNVERIFIABLE, transcript)


# :::::: extend :::::: #

def _map_inputs(f: PartialTreeMap) -> dict:
    return {
        "poset": f.poset.to_document(),
        "map": {"level": f.level, "intervals": f.to_json()},
    }


def _law_entries(f: PartialTreeMap, table: Dict[Word, str]) -> List[TranscriptEntry]:
    poset = f.poset
    mismatches = [w.bits for w, x in f.assignment().items() if table.get(w) != x]
    decreasing = [
        f"{w.bits} -> {w.bits}{bit}"
        for w, value in table.items()
        for bit in "01"
        if Word(w.bits + bit) in table and not poset.leq(value, table[Word(w.bits + bit)])
    ]
    return [
        entry("extension restricts to the map on its domain", not mismatches, ", ".join(mismatches[:5]) or None),
        entry("extension is monotone along the prefix order", not decreasing, ", ".join(decreasing[:5]) or None),
    ]


def run_extend(f: PartialTreeMap, options: CommandOptions) -> Certificate:
    logger.info(f"Extending a level-{f.level} partial map")
    extension = scott_extend(f)
    up_to = max(f.level, options.depth) if options.depth_given else f.level
    table = extension.table(up_to)

    flags = classify(f.poset)
    transcript = [entry("target is bounded complete with a bottom", flags.is_bounded_complete and flags.has_bottom)]
    transcript.extend(_law_entries(f, table))
    decision = Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL

    witnesses = {
        "bottom": extension.bottom,
        "up_to_level": up_to,
        "extension": {w.bits: x for w, x in table.items()},
    }
    return build_certificate(Command.EXTEND.value, {"depth": up_to}, _map_inputs(f), decision, witnesses, transcript)


def _rebuild_map(poset: FinitePoset, document: dict) -> PartialTreeMap:
    return PartialTreeMap.from_json(poset, document["level"], document["intervals"])


def recheck_extend(certificate: dict) -> Recheck:
    '''
      Recompute every embedded extension value from its block of the map, then
      re-run both laws on the embedded table.
    '''
    inputs = certificate["inputs"]
    poset = rebuild_poset(inputs["poset"])
    f = _rebuild_map(poset, inputs["map"])
    extension = scott_extend(f)
    table = {Word(bits): x for bits, x in certificate["witnesses"]["extension"].items()}

    wrong = [w.bits for w, x in table.items() if extension.value(w) != x]
    transcript = [entry("embedded extension values are infima of their blocks", not wrong, ", ".join(wrong[:5]) or None)]
    if wrong:
        return recheck_result(Decision.UNVERIFIABLE, transcript)
    transcript.extend(_law_entries(f, table))
    return recheck_result(Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL, transcript)
