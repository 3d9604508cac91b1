# ------------------------------
# Module: quantile.py
# Description: quantile command: distribution function, quantile adjoint, round trip
#              and the order-isomorphism check on the dyadic chain
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from services.dyadic import ONE, ZERO, Dyadic, format_dyadic, parse_dyadic
from services.quantile import (
    STATUS_FAIL,
    STATUS_OUTSIDE,
    ChainMeasure,
    adjunction_violations,
    bottom_closure,
    cdf_preserves_infima,
    cdf_step_function,
    chain_order_iso_check,
    quantile_pushforward,
    quantile_step_function,
)
from services.valuation import SimpleValuation
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import entry, recheck_result
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck, TranscriptEntry

logger = logging.getLogger(__name__)

# Worst decision wins when the checks are combined
SEVERITY = [Decision.PASS, Decision.PASS_WITH_DEVIATION, Decision.OUTSIDE_HYPOTHESIS, Decision.FAIL]


@dataclass
class QuantileEvaluation:
    decision: Decision
    witnesses: Dict[str, object] = field(default_factory=dict)
    transcript: List[TranscriptEntry] = field(default_factory=list)


def _worst(*decisions: Decision) -> Decision:
    return max(decisions, key=SEVERITY.index)


def _with_point_mass(mu: ChainMeasure, point: Dyadic, mass: Dyadic) -> ChainMeasure:
    masses = dict(mu.masses)
    masses[point] = masses.get(point, ZERO) + mass
    return ChainMeasure(masses, mu.carrier)


def evaluate_quantile(mu: ChainMeasure, nu: Optional[ChainMeasure], resolution: int,
                      check_roundtrip: bool) -> QuantileEvaluation:
    '''
      Run every check of the quantile command on exact data.

      Args:
          mu: the measure
          nu: optional second measure for the order-isomorphism check
          resolution: grid exponent d of the pointwise checks
          check_roundtrip: also push Lebesgue measure through the quantile function

      Returns:
          QuantileEvaluation with the combined decision
    '''
    cdf_step = cdf_step_function(mu)
    quantile_step = quantile_step_function(mu)
    violations = adjunction_violations(mu, resolution)
    transcript = [
        entry("distribution function is monotone", cdf_step.is_monotone()),
        entry("quantile function is monotone", quantile_step.is_monotone()),
        entry("distribution function preserves infima on the carrier", cdf_preserves_infima(mu)),
        entry(f"adjunction inequalities on the grid of exponent {resolution}", not violations,
              ", ".join(violations[:5]) or None),
    ]
    witnesses = {"cdf": cdf_step.to_json(), "quantile": quantile_step.to_json()}
    decision = Decision.PASS if all(t.passed for t in transcript) else Decision.FAIL

    if check_roundtrip:
        pushed = quantile_pushforward(mu)
        expected = _with_point_mass(mu, ONE, pushed.deficit) if pushed.deviation else mu
        closed = bottom_closure(mu)
        closed_pushed = quantile_pushforward(closed)
        witnesses["pushforward"] = pushed.measure.to_mass_map()
        witnesses["deficit"] = format_dyadic(pushed.deficit)
        witnesses["flags"] = pushed.flags
        transcript.append(entry(
            "pushforward equals the measure plus its deficit at the top" if pushed.deviation
            else "pushforward equals the measure",
            pushed.measure == expected,
        ))
        transcript.append(entry(
            "bottom closure round-trips exactly",
            closed_pushed.measure == closed and not closed_pushed.deviation,
        ))
        if not (pushed.measure == expected and closed_pushed.measure == closed):
            decision = Decision.FAIL
        elif pushed.deviation:
            decision = _worst(decision, Decision.PASS_WITH_DEVIATION)

    if nu is not None:
        iso = chain_order_iso_check(mu, nu, resolution)
        witnesses["order_isomorphism"] = iso.to_dict()
        transcript.append(entry(
            "valuation order agrees with pointwise quantile order",
            iso.status != STATUS_FAIL,
            f"valuation order {iso.valuation_order}, quantile order {iso.quantile_order}, status {iso.status}",
        ))
        if iso.status == STATUS_FAIL:
            decision = Decision.FAIL
        elif iso.status == STATUS_OUTSIDE:
            decision = _worst(decision, Decision.OUTSIDE_HYPOTHESIS)

    return QuantileEvaluation(decision=decision, witnesses=witnesses, transcript=transcript)


def _measure_document(mu: ChainMeasure) -> dict:
    return {
        "carrier": [format_dyadic(p) for p in mu.carrier],
        "mass": mu.to_mass_map(),
    }


def _measure_from_document(document: dict) -> ChainMeasure:
    carrier = [parse_dyadic(p, field="carrier") for p in document["carrier"]]
    return ChainMeasure.from_points(document["mass"], carrier)


def run_quantile(mu: SimpleValuation, nu: Optional[SimpleValuation], options: CommandOptions) -> Certificate:
    logger.info(f"Running quantile checks at resolution {options.depth}")
    mu_c = ChainMeasure.from_valuation(mu)
    nu_c = ChainMeasure.from_valuation(nu) if nu is not None else None
    evaluation = evaluate_quantile(mu_c, nu_c, options.depth, options.check_roundtrip)

    inputs = {"mu": _measure_document(mu_c)}
    if nu_c is not None:
        inputs["nu"] = _measure_document(nu_c)
    arguments = {"resolution": options.depth, "check_roundtrip": options.check_roundtrip}
    return build_certificate(
        Command.QUANTILE.value, arguments, inputs, evaluation.decision, evaluation.witnesses, evaluation.transcript
    )


def _pushforward_from_steps(step: dict) -> ChainMeasure:
    """Lebesgue lengths of the r-intervals read straight off an embedded quantile step function."""
    knots = [parse_dyadic(k) for k in step["knots"]]
    values = [parse_dyadic(v) for v in step["values"]]
    masses: Dict[Dyadic, Dyadic] = {}
    for i in range(1, len(knots)):
        masses[values[i]] = masses.get(values[i], ZERO) + (knots[i] - knots[i - 1])
    return ChainMeasure(masses)


def recheck_quantile(certificate: dict) -> Recheck:
    inputs = certificate["inputs"]
    arguments = certificate["arguments"]
    mu = _measure_from_document(inputs["mu"])
    nu = _measure_from_document(inputs["nu"]) if "nu" in inputs else None
    evaluation = evaluate_quantile(mu, nu, int(arguments["resolution"]), bool(arguments["check_roundtrip"]))

    witnesses = certificate["witnesses"]
    transcript = list(evaluation.transcript)
    if "pushforward" in witnesses:
        from_steps = _pushforward_from_steps(witnesses["quantile"])
        embedded = ChainMeasure.from_points(witnesses["pushforward"])
        transcript.append(entry("embedded pushforward matches the embedded quantile steps", from_steps == embedded))
        if from_steps != embedded:
            return recheck_result(Decision.UNVERIFIABLE, transcript)
    return recheck_result(evaluation.decision, transcript)
