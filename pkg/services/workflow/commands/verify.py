# ------------------------------
# Module: verify.py
# Description: verify command: re-derive a certificate's decision from its embedded data
# ------------------------------

import logging
from typing import Callable, Dict

from services.errors import ParseError
from services.schemas import CERTIFICATE_DOCUMENT_SCHEMA, CERTIFICATE_INPUT_SCHEMAS
from services.utils import digest, enforce_document_schema
from services.workflow.certificates import build_certificate
from services.workflow.commands.common import entry, recheck_result
from services.workflow.commands.convergence import recheck_converge, recheck_portmanteau, recheck_skorohod_demo
from services.workflow.commands.quantile import recheck_quantile
from services.workflow.commands.realization import recheck_extend, recheck_realize
from services.workflow.commands.sweep import recheck_sweep
from services.workflow.commands.transport import recheck_order, recheck_waybelow
from services.workflow.data_model import Certificate, Command, CommandOptions, Decision, Recheck

logger = logging.getLogger(__name__)


def recheck_verify(certificate: dict) -> Recheck:
    inner = enforce_document_schema(certificate["inputs"]["certificate"], CERTIFICATE_DOCUMENT_SCHEMA,
                                    name="embedded certificate")
    reproduced = verify_certificate(inner)
    same = reproduced.decision.value == inner["decision"]
    return recheck_result(
        Decision.PASS if same else Decision.FAIL,
        [entry("inner certificate decision reproduces", same)],
    )


RECHECKS: Dict[str, Callable[[dict], Recheck]] = {
    Command.ORDER.value: recheck_order,
    Command.SPLIT.value: recheck_order,
    Command.WAYBELOW.value: recheck_waybelow,
    Command.REALIZE.value: recheck_realize,
    Command.EXTEND.value: recheck_extend,
    Command.QUANTILE.value: recheck_quantile,
    Command.PORTMANTEAU.value: recheck_portmanteau,
    Command.CONVERGE.value: recheck_converge,
    Command.SKOROHOD_DEMO.value: recheck_skorohod_demo,
    Command.SWEEP.value: recheck_sweep,
    Command.VERIFY.value: recheck_verify,
}


def verify_certificate(certificate: dict) -> Recheck:
    '''
      Re-check a certificate without trusting anything but its embedded inputs.

      Returns:
          Recheck whose decision is the one the embedded data supports, or
          unverifiable when the digest or a witness does not hold up

      Raises:
          ParseError: unknown command, or inputs, arguments or witnesses
                      missing a field the re-check reads
    '''
    command = certificate["command"]
    if command not in RECHECKS:
        raise ParseError(f"Unknown command '{command}'", field="command")
    enforce_document_schema(certificate["inputs"], CERTIFICATE_INPUT_SCHEMAS[command],
                            name=f"{command} certificate inputs")
    digest_ok = digest(certificate["inputs"]) == certificate["inputs_digest"]
    if not digest_ok:
        logger.warning(f"Digest mismatch on a {command} certificate")
        return recheck_result(Decision.UNVERIFIABLE, [entry("inputs digest matches", False)])
    try:
        recheck = RECHECKS[command](certificate)
    except (KeyError, IndexError, TypeError) as e:
        raise ParseError(f"{command} certificate is malformed: {e!r}") from e
    recheck.transcript.insert(0, entry("inputs digest matches", True))
    return recheck


def run_verify(certificate: dict, options: CommandOptions) -> Certificate:
    logger.info(f"Verifying a {certificate['command']} certificate")
    recheck = verify_certificate(certificate)
    same = recheck.decision.value == certificate["decision"]
    transcript = list(recheck.transcript)
    transcript.append(entry("decision reproduces", same, f"claimed {certificate['decision']}, "
                                                       f"reproduced {recheck.decision.value}"))
    witnesses = {
        "command": certificate["command"],
        "claimed": certificate["decision"],
        "reproduced": recheck.decision.value,
    }
    return build_certificate(
        Command.VERIFY.value,
        {},
        {"certificate": certificate},
        Decision.PASS if same else Decision.FAIL,
        witnesses,
        transcript,
    )
