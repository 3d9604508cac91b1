# ------------------------------
# Module: sweep.py
# Description: sweep command: max-flow decider against the brute-force oracle
# ------------------------------

import logging
from typing import Dict, List

import pandas as pd

from services.constants import RANDOM_SEED, SWEEP_PAIRS_PER_POSET
from services.fixtures import fixture_posets
from services.poset import FinitePoset
from services.sweeps import run_oracle_sweep, sweep_passes
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import entry, rebuild_poset, recheck_result
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck

logger = logging.getLogger(__name__)

COUNT_COLUMNS = ["elements", "pairs", "holds", "agree", "disagree", "plan_failures",
                 "non_dyadic_entries", "cut_mismatches"]


def _summary_rows(summary: pd.DataFrame) -> List[dict]:
    # Wall-clock seconds stay out so certificates are byte-identical across runs
    return [
        {"poset": str(row["poset"]), **{c: int(row[c]) for c in COUNT_COLUMNS}}
        for _, row in summary.iterrows()
    ]


def _transcript(summary: pd.DataFrame) -> list:
    return [
        entry("max-flow agrees with the oracle on every pair", int(summary["disagree"].sum()) == 0,
              f"{int(summary['agree'].sum())} agreements"),
        entry("every accepted plan verifies", int(summary["plan_failures"].sum()) == 0),
        entry("every plan entry is dyadic", int(summary["non_dyadic_entries"].sum()) == 0),
        entry("flow value equals cut capacity", int(summary["cut_mismatches"].sum()) == 0),
    ]


def run_sweep(options: CommandOptions, posets: Dict[str, FinitePoset] = None) -> Certificate:
    pairs = options.pairs or SWEEP_PAIRS_PER_POSET
    seed = RANDOM_SEED if options.seed is None else options.seed
    posets = posets if posets is not None else fixture_posets()
    summary = run_oracle_sweep(pairs, seed, posets)
    logger.info(f"Sweep finished in {summary['seconds'].sum():.2f}s")

    inputs = {
        "seed": seed,
        "pairs_per_poset": pairs,
        "posets": [{"name": name, "poset": poset.to_document()} for name, poset in posets.items()],
    }
    return build_certificate(
        Command.SWEEP.value,
        {"pairs": pairs, "seed": seed},
        inputs,
        Decision.PASS if sweep_passes(summary) else Decision.FAIL,
        {"summary": _summary_rows(summary)},
        _transcript(summary),
    )


def recheck_sweep(certificate: dict) -> Recheck:
    """Re-run the seeded sweep on the embedded corpus and compare the counts row by row."""
    inputs = certificate["inputs"]
    posets = {item["name"]: rebuild_poset(item["poset"]) for item in inputs["posets"]}
    summary = run_oracle_sweep(int(inputs["pairs_per_poset"]), int(inputs["seed"]), posets)
    same = _summary_rows(summary) == certificate["witnesses"]["summary"]
    transcript = [entry("seeded sweep reproduces the embedded counts", same)] + _transcript(summary)
    if not same:
        return recheck_result(Decision.UNVERIFIABLE, transcript)
    return recheck_result(Decision.PASS if sweep_passes(summary) else Decision.FAIL, transcript)
