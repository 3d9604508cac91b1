# ------------------------------
# Module: orchestrator.py
# Description: Load the input documents of a command, run it and return its certificate
# ------------------------------

import logging
from typing import List, Optional

from services.errors import ParseError
from services.workflow.commands import (
    run_converge,
    run_extend,
    run_order,
    run_portmanteau,
    run_quantile,
    run_realize,
    run_skorohod_demo,
    run_split,
    run_sweep,
    run_verify,
    run_waybelow,
)
from services.workflow.data_model import Certificate, Command, CommandOptions
from services.workflow.task_handle_inputs import DocumentLoader, ParsedInputs, parse_input

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def _require(items: list, count: int, what: str, command: Command) -> list:
    if len(items) < count:
        raise ParseError(f"{command.value} needs {count} {what}, got {len(items)}")
    return items


def run_command(command: Command, paths: List[str], options: Optional[CommandOptions] = None,
                loader: Optional[DocumentLoader] = None) -> Certificate:
    """
        Entry point for every command:
        1. Load and validate the input documents
        2. Pick the objects the command works on
        3. Run it and return the certificate (emitting is left to the caller)
    """
    command = Command(command)
    options = options or CommandOptions()
    logger.info(f"Running {command.value} on {len(paths)} input(s)")
    parsed: ParsedInputs = parse_input(paths, loader)

    if command in (Command.ORDER, Command.SPLIT, Command.WAYBELOW):
        mu, nu = _require(parsed.valuations, 2, "valuation documents", command)[:2]
        if command == Command.ORDER:
            return run_order(mu, nu, options)
        elif command == Command.SPLIT:
            return run_split(mu, nu, options)
        return run_waybelow(mu, nu, options)

    elif command == Command.REALIZE:
        if parsed.chains:
            chain = parsed.chains[0]
        else:
            chain = _require(parsed.valuations, 1, "valuation documents or a chain document", command)
        return run_realize(chain, options)

    elif command == Command.EXTEND:
        return run_extend(_require(parsed.maps, 1, "partial map document", command)[0], options)

    elif command == Command.QUANTILE:
        valuations = _require(parsed.valuations, 1, "chain-measure document", command)
        return run_quantile(valuations[0], valuations[1] if len(valuations) > 1 else None, options)

    elif command in (Command.PORTMANTEAU, Command.CONVERGE, Command.SKOROHOD_DEMO):
        sequence = _require(parsed.sequences, 1, "sequence document", command)[0]
        if command == Command.PORTMANTEAU:
            return run_portmanteau(sequence, options)
        elif command == Command.CONVERGE:
            return run_converge(sequence, options)
        return run_skorohod_demo(sequence, options)

    elif command == Command.VERIFY:
        return run_verify(_require(parsed.certificates, 1, "certificate", command)[0], options)

    return run_sweep(options)
