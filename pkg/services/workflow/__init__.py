from .data_model import Certificate, Command, CommandOptions, Decision
from .certificates import certificate_text, emit_certificate
from .orchestrator import run_command
