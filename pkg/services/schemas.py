# ------------------------------
# Project schemas
# ------------------------------

# :::::: Input documents :::::: #
# field -> (expected type(s), required)

POSET_DOCUMENT_SCHEMA = {
    "elements": (list, True),
    "covers": (list, False),
    "bottom": (str, False),
    "waybelow": (list, False),
}

VALUATION_DOCUMENT_SCHEMA = {
    "poset": ((str, dict), True),
    "mass": (dict, True),
}

PARTIAL_MAP_DOCUMENT_SCHEMA = {
    "poset": ((str, dict), True),
    "level": (int, True),
    "intervals": (list, True),
}

SEQUENCE_DOCUMENT_SCHEMA = {
    "poset": ((str, dict), True),
    "sequence": (list, True),
    "limit": (dict, True),
    "limit_chain": (list, False),
}

CHAIN_DOCUMENT_SCHEMA = {
    "poset": ((str, dict), True),
    "chain": (list, True),
}

CERTIFICATE_DOCUMENT_SCHEMA = {
    "command": (str, True),
    "arguments": (dict, True),
    "inputs_digest": (str, True),
    "inputs": (dict, True),
    "decision": (str, True),
    "witnesses": (dict, True),
    "transcript": (list, True),
}

# :::::: Embedded certificate inputs :::::: #
# command -> schema of certificate["inputs"]

VALUATION_PAIR_INPUTS = {
    "poset": (dict, True),
    "mu": (dict, True),
    "nu": (dict, True),
}

CERTIFICATE_INPUT_SCHEMAS = {
    "order": VALUATION_PAIR_INPUTS,
    "split": VALUATION_PAIR_INPUTS,
    "waybelow": VALUATION_PAIR_INPUTS,
    "realize": {"poset": (dict, True), "chain": (list, True)},
    "extend": {"poset": (dict, True), "map": (dict, True)},
    "quantile": {"mu": (dict, True), "nu": (dict, False)},
    "portmanteau": SEQUENCE_DOCUMENT_SCHEMA,
    "converge": SEQUENCE_DOCUMENT_SCHEMA,
    "skorohod-demo": SEQUENCE_DOCUMENT_SCHEMA,
    "sweep": {"seed": (int, True), "pairs_per_poset": (int, True), "posets": (list, True)},
    "verify": {"certificate": (dict, True)},
}

# :::::: Sweep summary :::::: #

SWEEP_SUMMARY_SCHEMA = {
    "poset": "string",
    "elements": "int64",
    "pairs": "int64",
    "holds": "int64",
    "agree": "int64",
    "disagree": "int64",
    "plan_failures": "int64",
    "non_dyadic_entries": "int64",
    "cut_mismatches": "int64",
    "seconds": "float64",
}
