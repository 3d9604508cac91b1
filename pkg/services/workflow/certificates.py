# ------------------------------
# Module: certificates.py
# Description: Build, serialize and emit certificates
# ------------------------------

import logging
import sys
from typing import Any, Dict, List, Optional

from services.logs import log_certificate
from services.utils import canonical_json, digest, write_file
from services.workflow.data_model import Certificate, Decision, TranscriptEntry

logger = logging.getLogger(__name__)


def build_certificate(command: str, arguments: Dict[str, Any], inputs: Dict[str, Any], decision: Decision,
                      witnesses: Optional[Dict[str, Any]] = None,
                      transcript: Optional[List[TranscriptEntry]] = None) -> Certificate:
    '''
      Assemble a certificate; the digest covers the embedded inputs only, so
      identical inputs give identical certificates.
    '''
    return Certificate(
        command=command,
        arguments=arguments,
        inputs=inputs,
        inputs_digest=digest(inputs),
        decision=decision,
        witnesses=witnesses or {},
        transcript=transcript or [],
    )


def certificate_text(certificate: Certificate) -> str:
    return canonical_json(certificate.to_dict()) + "\n"


def emit_certificate(certificate: Certificate, sink: Optional[str] = None) -> int:
    '''
      Write the canonical JSON of a certificate to a file or standard output.

      Returns:
          the exit code the decision maps to
    '''
    text = certificate_text(certificate)
    if sink:
        write_file(text, sink)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    log_certificate(certificate.command, certificate.decision.value, certificate.inputs_digest, sink or "stdout")
    return certificate.exit_code
