# ------------------------------
# Module: base.py
# Description: Order decider interface and the decision it returns
# ------------------------------

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional

from services.dyadic import Dyadic, format_dyadic
from services.poset import UpperSet
from services.transport.plan import TransportPlan
from services.valuation import SimpleValuation


@dataclass
class OrderDecision:
    """Outcome of deciding mu <= nu, with a plan when it holds and a separating upper set when it fails."""
    holds: bool
    provider: str
    plan: Optional[TransportPlan] = None
    witness: Optional[UpperSet] = None
    flow_value: Optional[Dyadic] = None
    cut_capacity: Optional[Dyadic] = None
    cut_sources: Optional[List[str]] = None

    def to_dict(self) -> dict:
        result = {"holds": self.holds, "provider": self.provider}
        if self.plan is not None:
            result["plan"] = self.plan.to_json()
        if self.witness is not None:
            result["witness"] = self.witness.to_list()
        if self.flow_value is not None:
            result["flow_value"] = format_dyadic(self.flow_value)
        if self.cut_capacity is not None:
            result["cut_capacity"] = format_dyadic(self.cut_capacity)
        if self.cut_sources is not None:
            result["cut_sources"] = list(self.cut_sources)
        return result


class OrderDecider(ABC):
    """Abstract base class for procedures deciding the valuation order."""

    name: str = "abstract"

    @abstractmethod
    def decide(self, mu: SimpleValuation, nu: SimpleValuation) -> OrderDecision:
        """Decide mu <= nu."""
        pass
