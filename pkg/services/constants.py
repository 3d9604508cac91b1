# ------------------------------
# Module: constants.py
# Description: Constants for the services
# ------------------------------

import os
from pathlib import Path
from dotenv import load_dotenv

# Allow a project-level .env to override the tunables below
project_root = Path(__file__).parent.parent
load_dotenv(project_root / '.env')

# :::::: Exact Arithmetic Related :::::: #

# Largest exponent m allowed in k/2^m before we refuse to go on
MAX_DYADIC_EXPONENT = int(os.getenv("VALUATION_MAX_EXPONENT", 4096))

# :::::: Poset Related :::::: #

# Upper-set enumeration is exponential; posets above this size are refused
ENUMERATION_LIMIT = int(os.getenv("VALUATION_ENUMERATION_LIMIT", 20))

# :::::: Transport Related :::::: #

# Options: "maxflow", "enumeration"
ORDER_PROVIDER = os.getenv("VALUATION_ORDER_PROVIDER", "maxflow")

# Capacity of the x -> y edges of the transport network. Total supply never exceeds 1.
INNER_EDGE_CAPACITY = 1

MASS_RULE_STRICT_TOTAL = "strict_total"
MASS_RULE_STRICT_PER_ELEMENT = "strict_per_element"
MASS_RULES = [MASS_RULE_STRICT_TOTAL, MASS_RULE_STRICT_PER_ELEMENT]
DEFAULT_MASS_RULE = MASS_RULE_STRICT_TOTAL

# :::::: Cantor Tree / Realization Related :::::: #

DEFAULT_DEPTH = 8
DEFAULT_HORIZON = 1
DEFAULT_TOLERANCE = "0"

# :::::: Fixtures & Sweeps Related :::::: #

FIXTURES_FOLDER_PATH_STR = "storage/fixtures"

RANDOM_SEED = int(os.getenv("VALUATION_RANDOM_SEED", 20240611))

# Random valuation pairs generated per fixture poset by the oracle sweep
SWEEP_PAIRS_PER_POSET = int(os.getenv("VALUATION_SWEEP_PAIRS", 500))

# Weights of random valuations are multiples of 1/SWEEP_DENOMINATOR
SWEEP_DENOMINATOR = 16

# :::::: CLI Related :::::: #

CERTIFICATE_INDENT = 2

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT_ERROR = 2

COMMANDS = [
    "order", "split", "waybelow", "realize", "extend", "quantile",
    "portmanteau", "converge", "skorohod-demo", "verify", "sweep",
]
