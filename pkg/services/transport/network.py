# ------------------------------
# Module: network.py
# Description: The source/left/right/sink splitting flow network between two valuations
# ------------------------------

import logging
from typing import Callable, Hashable, List, Optional

import networkx as nx

from services.constants import INNER_EDGE_CAPACITY
from services.dyadic import Dyadic
from services.valuation import SimpleValuation

logger = logging.getLogger(__name__)

SOURCE = ("source",)
SINK = ("sink",)


def left(x: str) -> tuple:
    return ("left", x)


def right(y: str) -> tuple:
    return ("right", y)


class FlowNetwork:
    """
    Source -> x (capacity r_x), x -> y (capacity 1, only when x is related to y),
    y -> sink (capacity s_y).

    Adjacency is inserted in the order the search must scan it: left nodes and
    right nodes in enumeration order, and from each x first the related y != x,
    then the diagonal y = x.
    """

    def __init__(self, mu: SimpleValuation, nu: SimpleValuation,
                 related: Optional[Callable[[str, str], bool]] = None):
        poset = mu.poset
        self.related = related or poset.leq
        self.mu = mu
        self.nu = nu
        self.left_nodes: List[str] = mu.support()
        self.right_nodes: List[str] = nu.support()

        graph = nx.DiGraph()
        graph.add_node(SOURCE)
        for x in self.left_nodes:
            graph.add_edge(SOURCE, left(x), capacity=mu.weight(x))
        for x in self.left_nodes:
            diagonal = None
            for y in self.right_nodes:
                if not self.related(x, y):
                    continue
                if y == x:
                    diagonal = y
                    continue
                graph.add_edge(left(x), right(y), capacity=Dyadic(INNER_EDGE_CAPACITY))
            if diagonal is not None:
                graph.add_edge(left(x), right(diagonal), capacity=Dyadic(INNER_EDGE_CAPACITY))
        for y in self.right_nodes:
            graph.add_edge(right(y), SINK, capacity=nu.weight(y))
        graph.add_node(SINK)
        self.graph = graph

    def capacity(self, u: Hashable, v: Hashable) -> Dyadic:
        return self.graph.edges[u, v]["capacity"]

    def inner_edges(self) -> List[tuple]:
        return [(u[1], v[1]) for u, v in self.graph.edges() if u[0] == "left" and v[0] == "right"]
