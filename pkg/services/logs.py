# ------------------------------
# Module: logs.py
# Description: In-memory log of emitted certificates
# ------------------------------

import logging
from typing import Dict, List, Optional
from datetime import datetime

# Configure logging
logger = logging.getLogger(__name__)

# In-memory storage for emitted certificates
_certificate_logs = []

def log_certificate(command: str, decision: str, inputs_digest: str, sink: str) -> None:
    """
    Record an emitted certificate in in-memory storage.
    Timestamps live only here, never inside certificates.

    Args:
        command: The command that produced the certificate
        decision: Its decision
        inputs_digest: Digest of the inputs it was computed from
        sink: Output path, or "stdout"
    """
    log_entry = {
        "timestamp": datetime.now().isoformat(),
        "command": command,
        "decision": decision,
        "inputs_digest": inputs_digest,
        "sink": sink,
    }
    _certificate_logs.append(log_entry)
    logger.info(f"Logged certificate: {command} -> {decision}")

def get_all_logs() -> List[Dict]:
    """Get all logs, sorted by timestamp (newest first)."""
    return sorted(_certificate_logs, key=lambda x: x["timestamp"], reverse=True)

def get_latest_log() -> Optional[Dict]:
    """Get the most recent log entry."""
    return _certificate_logs[-1] if _certificate_logs else None

def clear_logs() -> None:
    """Clear all logs from memory."""
    _certificate_logs.clear()
    logger.info("Cleared all certificate logs")
