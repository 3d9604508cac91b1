# ------------------------------
# Module: data_model.py
# Description: Data models for commands, their inputs and the certificates they emit
# ------------------------------

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from services.constants import (
    DEFAULT_DEPTH,
    DEFAULT_HORIZON,
    DEFAULT_MASS_RULE,
    EXIT_OK,
    EXIT_REFUSED,
)
from services.errors import ParseError


class Command(str, Enum):
    ORDER = "order"
    SPLIT = "split"
    WAYBELOW = "waybelow"
    REALIZE = "realize"
    EXTEND = "extend"
    QUANTILE = "quantile"
    PORTMANTEAU = "portmanteau"
    CONVERGE = "converge"
    SKOROHOD_DEMO = "skorohod-demo"
    VERIFY = "verify"
    SWEEP = "sweep"


class Decision(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    PASS = "pass"
    FAIL = "fail"
    PASS_WITH_DEVIATION = "pass_with_deviation"
    OUTSIDE_HYPOTHESIS = "outside_hypothesis"
    UNVERIFIABLE = "unverifiable"


PASSING_DECISIONS = {Decision.HOLDS, Decision.PASS, Decision.PASS_WITH_DEVIATION}


@dataclass
class CommandOptions:
    """Flags shared by all commands; None means the command picks its own default."""
    depth: int = DEFAULT_DEPTH
    depth_given: bool = False
    horizon: int = DEFAULT_HORIZON
    tail: Optional[int] = None
    tolerance: Optional[str] = None
    mass_rule: str = DEFAULT_MASS_RULE
    check_roundtrip: bool = False
    pairs: Optional[int] = None
    seed: Optional[int] = None
    output: Optional[str] = None

    def __post_init__(self):
        if self.depth < 0:
            raise ParseError(f"depth must be non-negative, got {self.depth}", field="depth")
        if self.pairs is not None and self.pairs < 1:
            raise ParseError(f"pairs must be positive, got {self.pairs}", field="pairs")


@dataclass
class TranscriptEntry:
    """One invariant re-checked while producing a certificate."""
    check: str
    passed: bool
    detail: Optional[str] = None

    def to_dict(self) -> dict:
        entry = {"check": self.check, "passed": self.passed}
        if self.detail is not None:
            entry["detail"] = self.detail
        return entry


@dataclass
class Certificate:
    command: str
    arguments: Dict[str, Any]
    inputs: Dict[str, Any]
    inputs_digest: str
    decision: Decision
    witnesses: Dict[str, Any] = field(default_factory=dict)
    transcript: List[TranscriptEntry] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.decision in PASSING_DECISIONS else EXIT_REFUSED

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "arguments": dict(self.arguments),
            "inputs": self.inputs,
            "inputs_digest": self.inputs_digest,
            "decision": self.decision.value,
            "witnesses": self.witnesses,
            "transcript": [entry.to_dict() for entry in self.transcript],
        }


@dataclass
class Recheck:
    """Result of re-deriving a certificate's decision from its embedded data."""
    decision: Decision
    transcript: List[TranscriptEntry] = field(default_factory=list)
