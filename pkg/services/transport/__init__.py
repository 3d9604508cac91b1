# ------------------------------
# Module: __init__.py
# Description: Order decider providers and the factory that picks one
# ------------------------------

from typing import Optional

from .base import OrderDecider, OrderDecision
from .enumeration import EnumerationDecider
from .maxflow import MaxFlowDecider, decide_order_maxflow, decide_way_below
from .plan import TransportPlan, verify_transport_plan
from services.constants import ORDER_PROVIDER


def get_order_decider(provider: Optional[str] = None) -> OrderDecider:
    """
    Factory function to get the order decider configured by VALUATION_ORDER_PROVIDER.
    Returns either the max-flow decider or the brute-force enumeration decider.
    """
    provider = (provider or ORDER_PROVIDER).lower()

    if provider == "maxflow":
        return MaxFlowDecider()
    elif provider == "enumeration":
        return EnumerationDecider()
    else:
        raise ValueError(f"Unknown VALUATION_ORDER_PROVIDER={provider}")
