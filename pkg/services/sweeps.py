# ------------------------------
# Module: sweeps.py
# Description: Oracle-equivalence sweep of the max-flow decider over the fixture corpus
# ------------------------------

import logging
import time
from typing import Dict, Optional

import pandas as pd

from services.constants import SWEEP_DENOMINATOR, SWEEP_PAIRS_PER_POSET
from services.dyadic import Dyadic
from services.fixtures import fixture_posets, get_rng, random_pair
from services.poset import FinitePoset
from services.schemas import SWEEP_SUMMARY_SCHEMA
from services.transport.maxflow import decide_order_maxflow
from services.transport.plan import verify_transport_plan
from services.utils import enforce_schema
from services.valuation import order_oracle

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def sweep_poset(name: str, poset: FinitePoset, pairs: int, rng, denominator: int = SWEEP_DENOMINATOR) -> dict:
    '''
      Compare the max-flow decider with the brute-force oracle on random pairs.

      Returns:
          one summary row
    '''
    row = {
        "poset": name, "elements": len(poset), "pairs": pairs, "holds": 0, "agree": 0,
        "disagree": 0, "plan_failures": 0, "non_dyadic_entries": 0, "cut_mismatches": 0,
    }
    started = time.perf_counter()
    for _ in range(pairs):
        mu, nu = random_pair(poset, rng, denominator)
        decision = decide_order_maxflow(mu, nu)
        oracle = order_oracle(mu, nu)
        if decision.holds == oracle.holds:
            row["agree"] += 1
        else:
            row["disagree"] += 1
            logger.error(f"Decider and oracle disagree on {mu} vs {nu}")
        if decision.flow_value != decision.cut_capacity:
            row["cut_mismatches"] += 1
        if decision.holds:
            row["holds"] += 1
            row["non_dyadic_entries"] += sum(not isinstance(v, Dyadic) for v in decision.plan.values())
            if not verify_transport_plan(mu, nu, decision.plan).passes:
                row["plan_failures"] += 1
        elif mu.mass(decision.witness.members) <= nu.mass(decision.witness.members):
            row["plan_failures"] += 1
    row["seconds"] = time.perf_counter() - started
    return row


def run_oracle_sweep(pairs_per_poset: int = SWEEP_PAIRS_PER_POSET, seed: Optional[int] = None,
                     posets: Optional[Dict[str, FinitePoset]] = None) -> pd.DataFrame:
    '''
      Sweep every fixture poset and summarize one row per poset.

      Args:
          pairs_per_poset: random valuation pairs per poset
          seed: generator seed, defaults to VALUATION_RANDOM_SEED
          posets: the corpus, defaults to the fixture posets

      Returns:
          DataFrame following SWEEP_SUMMARY_SCHEMA
    '''
    rng = get_rng(seed)
    posets = posets if posets is not None else fixture_posets()
    rows = []
    for name, poset in posets.items():
        logger.info(f"Sweeping {name} with {pairs_per_poset} pairs")
        rows.append(sweep_poset(name, poset, pairs_per_poset, rng))
    return enforce_schema(pd.DataFrame(rows), SWEEP_SUMMARY_SCHEMA)


def sweep_passes(summary: pd.DataFrame) -> bool:
    failures = summary[["disagree", "plan_failures", "non_dyadic_entries", "cut_mismatches"]].to_numpy().sum()
    return int(failures) == 0
