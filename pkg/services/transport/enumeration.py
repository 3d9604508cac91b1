# ------------------------------
# Module: enumeration.py
# Description: Order decider backed by upper-set enumeration
# ------------------------------

from services.transport.base import OrderDecider, OrderDecision
from services.valuation import SimpleValuation, order_oracle


class EnumerationDecider(OrderDecider):
    """Brute-force decider over all upper sets. Never produces a plan."""

    name = "enumeration"

    def decide(self, mu: SimpleValuation, nu: SimpleValuation) -> OrderDecision:
        result = order_oracle(mu, nu)
        return OrderDecision(holds=result.holds, provider=self.name, witness=result.witness)
