# ------------------------------------------------------------------
# Project's Entry Point
# Run: python main.py <command> [inputs ...] [flags]
# Example: python main.py order storage/fixtures/mu_half_bottom.json storage/fixtures/nu_quarter_ab.json
# ------------------------------------------------------------------

import argparse
import logging
import sys
from typing import List, Optional

from services.constants import (
    COMMANDS,
    DEFAULT_DEPTH,
    DEFAULT_HORIZON,
    DEFAULT_MASS_RULE,
    EXIT_INPUT_ERROR,
    MASS_RULES,
)
from services.errors import ValuationError
from services.workflow import CommandOptions, emit_certificate, run_command

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuation-explorer",
        description="Decide, realize and certify statements about simple valuations on finite posets.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="*", help="input documents (JSON)")
    parser.add_argument("--depth", type=int, default=None, help=f"tree depth or grid exponent (default {DEFAULT_DEPTH})")
    parser.add_argument("--horizon", type=int, default=DEFAULT_HORIZON, help="first index of the Portmanteau tail")
    parser.add_argument("--tail", type=int, default=None, help="first index of the convergence tail")
    parser.add_argument("--tolerance", default=None, help="dyadic slack, e.g. 1/1024")
    parser.add_argument("--mass-rule", choices=MASS_RULES, default=DEFAULT_MASS_RULE)
    parser.add_argument("--check-roundtrip", action="store_true", help="quantile: push Lebesgue measure back")
    parser.add_argument("--pairs", type=int, default=None, help="sweep: random pairs per poset")
    parser.add_argument("--seed", type=int, default=None, help="sweep: generator seed")
    parser.add_argument("--output", default=None, help="write the certificate here instead of stdout")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG")
    return parser


def options_from_args(args: argparse.Namespace) -> CommandOptions:
    return CommandOptions(
        depth=DEFAULT_DEPTH if args.depth is None else args.depth,
        depth_given=args.depth is not None,
        horizon=args.horizon,
        tail=args.tail,
        tolerance=args.tolerance,
        mass_rule=args.mass_rule,
        check_roundtrip=args.check_roundtrip,
        pairs=args.pairs,
        seed=args.seed,
        output=args.output,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        options = options_from_args(args)
        certificate = run_command(args.command, args.inputs, options)
        return emit_certificate(certificate, options.output)
    except (ValuationError, OSError) as e:
        logger.error(f"{args.command} refused its input: {e}", exc_info=True)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
