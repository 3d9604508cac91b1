# ------------------------------
# Module: convergence.py
# Description: portmanteau, converge and skorohod-demo commands
# ------------------------------

import logging
from pathlib import Path
from typing import List, Tuple

from services.cantor import Word
from services.constants import DEFAULT_DEPTH, DEFAULT_TOLERANCE
from services.dyadic import Dyadic, format_dyadic, parse_dyadic
from services.realization import (
    ASConvergenceCertificate,
    RealizationResult,
    empirical_convergence,
    grid_pushforward,
    realize_chain,
)
from services.realization.chain import evaluate_limit
from services.valuation import LIMINF_CONDITION, LIMSUP_CONDITION, order_oracle, portmanteau_check
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import entry, recheck_result
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck, TranscriptEntry
from services.workflow.task_handle_inputs import DocumentLoader, SequenceInput

logger = logging.getLogger(__name__)


def _sequence_inputs(sequence: SequenceInput) -> dict:
    inputs = {
        "poset": sequence.poset.to_document(),
        "sequence": [mu.to_mass_map() for mu in sequence.sequence],
        "limit": sequence.limit.to_mass_map(),
    }
    if sequence.limit_chain is not None:
        inputs["limit_chain"] = [sigma.to_mass_map() for sigma in sequence.limit_chain]
    return inputs


def _rebuild_sequence(inputs: dict) -> SequenceInput:
    return DocumentLoader().sequence_from_document(inputs, Path("."))


# :::::: portmanteau :::::: #

def run_portmanteau(sequence: SequenceInput, options: CommandOptions) -> Certificate:
    tolerance = parse_dyadic(options.tolerance or DEFAULT_TOLERANCE, field="tolerance")
    logger.info(f"Checking Portmanteau inequalities from n = {options.horizon}")
    result = portmanteau_check(sequence.sequence, sequence.limit, options.horizon, tolerance)

    conditions = {v.condition for v in result.violations}
    transcript = [
        entry("liminf of mu_n(U) reaches mu(U) on every upper set",
              LIMINF_CONDITION not in conditions, f"{result.open_sets_checked} upper sets"),
        entry("limsup of mu_n(U) stays below mu(U) on finitely generated upper sets",
              LIMSUP_CONDITION not in conditions, f"{result.generated_sets_checked} upper sets"),
    ]
    arguments = {"horizon": options.horizon, "tolerance": format_dyadic(tolerance)}
    return build_certificate(
        Command.PORTMANTEAU.value,
        arguments,
        _sequence_inputs(sequence),
        Decision.PASS if result.passes else Decision.FAIL,
        result.to_dict(),
        transcript,
    )


def recheck_portmanteau(certificate: dict) -> Recheck:
    '''
      Every embedded violation is re-evaluated on the tail; a certificate without
      violations is re-checked over all upper sets.
    '''
    sequence = _rebuild_sequence(certificate["inputs"])
    horizon = int(certificate["arguments"]["horizon"])
    tolerance = parse_dyadic(certificate["arguments"]["tolerance"])
    tail = sequence.sequence[horizon - 1:]
    poset = sequence.poset

    transcript = []
    for violation in certificate["witnesses"]["violations"]:
        members = poset.upper_set(violation["witness"]).members
        bound_mass = sequence.limit.mass(members)
        if violation["condition"] == LIMINF_CONDITION:
            observed = min(mu.mass(members) for mu in tail)
            broken = observed < bound_mass - tolerance
        else:
            observed = max(mu.mass(members) for mu in tail)
            broken = observed > bound_mass + tolerance
        transcript.append(entry(f"{violation['condition']} violated on {violation['witness']}", broken,
                                f"observed {format_dyadic(observed)}"))
    if transcript:
        all_broken = all(t.passed for t in transcript)
        return recheck_result(Decision.FAIL if all_broken else Decision.UNVERIFIABLE, transcript)

    result = portmanteau_check(sequence.sequence, sequence.limit, horizon, tolerance)
    transcript.append(entry("no upper set violates either inequality", result.passes))
    return recheck_result(Decision.PASS if result.passes else Decision.FAIL, transcript)


# :::::: converge / skorohod-demo :::::: #

def _realize_limit(sequence: SequenceInput) -> RealizationResult:
    return realize_chain(sequence.limit_chain or [sequence.limit])


def _resolve_depth(options: CommandOptions, results: List[RealizationResult]) -> int:
    # An explicit depth is taken as given and may be refused; otherwise go deep enough
    if options.depth_given:
        return options.depth
    return max([DEFAULT_DEPTH] + [r.top_level for r in results])


def _tolerance(options: CommandOptions, tail: int) -> Dyadic:
    if options.tolerance is None:
        return Dyadic.half_power(tail)
    return parse_dyadic(options.tolerance, field="tolerance")


def _limit_chain_entries(sequence: SequenceInput) -> list:
    if not sequence.limit_chain:
        return []
    below = all(order_oracle(sigma, sequence.limit).holds for sigma in sequence.limit_chain)
    return [entry("every member of the limit chain lies below the limit", below)]


def run_converge(sequence: SequenceInput, options: CommandOptions) -> Certificate:
    '''
      Realize each mu_n on its own and the limit through its chain, then count the
      depth-d words where the tail disagrees with the limit map.
    '''
    tail = 1 if options.tail is None else options.tail
    results = [realize_chain([mu]) for mu in sequence.sequence]
    limit = _realize_limit(sequence)
    depth = _resolve_depth(options, results + [limit])
    tolerance = _tolerance(options, tail)
    logger.info(f"Empirical convergence at depth {depth}, tail {tail}")

    result = empirical_convergence(results, limit, depth, tail)
    passes = result.exception_mass <= tolerance
    transcript = _limit_chain_entries(sequence) + [
        entry("exception mass is within tolerance", passes,
              f"{format_dyadic(result.exception_mass)} <= {format_dyadic(tolerance)}"),
    ]
    arguments = {"depth": depth, "tail": tail, "tolerance": format_dyadic(tolerance)}
    return build_certificate(
        Command.CONVERGE.value,
        arguments,
        _sequence_inputs(sequence),
        Decision.PASS if passes and all(t.passed for t in transcript) else Decision.FAIL,
        result.to_dict(),
        transcript,
    )


def _exception_recheck(certificate: dict, witnesses: dict, depth: int,
                       tail: int) -> Tuple[TranscriptEntry, ASConvergenceCertificate]:
    sequence = _rebuild_sequence(certificate["inputs"])
    results = [realize_chain([mu]) for mu in sequence.sequence]
    limit = _realize_limit(sequence)
    result = empirical_convergence(results, limit, depth, tail)
    same_words = [w.bits for w in result.exception_words] == witnesses["exception_words"]
    return entry("exception words reproduce", same_words, f"{len(result.exception_words)} words"), result


def recheck_converge(certificate: dict) -> Recheck:
    arguments = certificate["arguments"]
    depth, tail = int(arguments["depth"]), int(arguments["tail"])
    tolerance = parse_dyadic(arguments["tolerance"])
    reproduced, result = _exception_recheck(certificate, certificate["witnesses"], depth, tail)
    if not reproduced.passed:
        return recheck_result(Decision.UNVERIFIABLE, [reproduced])
    sequence = _rebuild_sequence(certificate["inputs"])
    transcript = [reproduced] + _limit_chain_entries(sequence)
    transcript.append(entry("exception mass is within tolerance", result.exception_mass <= tolerance))
    return recheck_result(Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL, transcript)


def run_skorohod_demo(sequence: SequenceInput, options: CommandOptions) -> Certificate:
    '''
      The flat-poset walk-through: exception mass for every tail, the limit map on
      the all-ones word, and X_n λ = mu_n on the grid for every realized measure.
    '''
    n = len(sequence.sequence)
    tail = n if options.tail is None else options.tail
    results = [realize_chain([mu]) for mu in sequence.sequence]
    limit = _realize_limit(sequence)
    depth = _resolve_depth(options, results + [limit])
    tolerance = _tolerance(options, tail)
    logger.info(f"Skorohod demo at depth {depth} over {n} measures")

    per_tail = {}
    for t in range(1, n + 1):
        per_tail[str(t)] = format_dyadic(empirical_convergence(results, limit, depth, t).exception_mass)
    result = empirical_convergence(results, limit, depth, tail)
    all_ones = Word("1" * depth)
    limit_value = evaluate_limit(limit, all_ones)

    transcript = _limit_chain_entries(sequence)
    for i, (realized, mu) in enumerate(zip(results, sequence.sequence), start=1):
        grid = grid_pushforward(realized, depth)
        transcript.append(entry(f"grid pushforward of X_{i} equals mu_{i}", grid.measure == mu,
                                f"undefined mass {format_dyadic(grid.undefined_mass)}"))
    limit_grid = grid_pushforward(limit, depth)
    target = (sequence.limit_chain or [sequence.limit])[-1]
    transcript.append(entry("grid pushforward of the limit map equals the last limit-chain member",
                            limit_grid.measure == target))
    transcript.append(entry(f"exception mass at tail {tail} is within tolerance", result.exception_mass <= tolerance,
                            f"{format_dyadic(result.exception_mass)} <= {format_dyadic(tolerance)}"))

    witnesses = result.to_dict()
    witnesses["exception_mass_by_tail"] = per_tail
    witnesses["limit_at_all_ones"] = limit_value
    arguments = {"depth": depth, "tail": tail, "tolerance": format_dyadic(tolerance)}
    return build_certificate(
        Command.SKOROHOD_DEMO.value,
        arguments,
        _sequence_inputs(sequence),
        Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL,
        witnesses,
        transcript,
    )


def recheck_skorohod_demo(certificate: dict) -> Recheck:
    arguments = certificate["arguments"]
    depth, tail = int(arguments["depth"]), int(arguments["tail"])
    tolerance = parse_dyadic(arguments["tolerance"])
    witnesses = certificate["witnesses"]
    reproduced, result = _exception_recheck(certificate, witnesses, depth, tail)
    if not reproduced.passed:
        return recheck_result(Decision.UNVERIFIABLE, [reproduced])

    sequence = _rebuild_sequence(certificate["inputs"])
    limit = _realize_limit(sequence)
    transcript = [reproduced] + _limit_chain_entries(sequence)
    transcript.append(entry("limit value at the all-ones word reproduces",
                            evaluate_limit(limit, Word("1" * depth)) == witnesses["limit_at_all_ones"]))
    for i, mu in enumerate(sequence.sequence, start=1):
        grid = grid_pushforward(realize_chain([mu]), depth)
        transcript.append(entry(f"grid pushforward of X_{i} equals mu_{i}", grid.measure == mu))
    target = (sequence.limit_chain or [sequence.limit])[-1]
    transcript.append(entry("grid pushforward of the limit map equals the last limit-chain member",
                            grid_pushforward(limit, depth).measure == target))
    transcript.append(entry(f"exception mass at tail {tail} is within tolerance", result.exception_mass <= tolerance))
    return recheck_result(Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL, transcript)
