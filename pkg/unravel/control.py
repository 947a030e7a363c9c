"""
Resolute unravellings for binary classic profiles.

A biased rule favours alternative ``d``: among all optimal arborescences it
returns one in which every agent that can vote ``d`` in some optimum does.
"""
import dataclasses
import logging
from collections import deque
from typing import Dict, FrozenSet, NamedTuple, Optional

from .enums import Bias
from .exceptions import DomainError
from .graph.arborescence import min_bottleneck_arborescence, min_cost_arborescence
from .graph.delegation import Arborescence, DelegationGraph
from .graph.fulkerson import recursive_arborescence, run_fulkerson
from .utils import lift_base

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    arborescence: Arborescence
    votes: Dict[str, str]


@dataclasses.dataclass(frozen=True)
class Membership:
    """Agents voting ``alternative`` in at least one optimum, per rule."""
    alternative: str
    minsum: FrozenSet[str]
    minmax: FrozenSet[str]


def _other(graph: DelegationGraph, d) -> str:
    d = str(d)
    if len(graph.alternatives) != 2 or d not in graph.alternatives:
        raise DomainError(graph.alternatives)
    return next(alt for alt in graph.alternatives if alt != d)


def _incoming(graph: DelegationGraph, edges):
    """Delegation edges grouped by target, direct edges grouped by alternative."""
    transposed = [[] for _ in range(graph.vertex_count)]
    direct = {alt: [] for alt in graph.alternatives}
    for edge in edges:
        if edge.is_direct:
            direct[edge.alternative].append(edge)
        else:
            transposed[edge.target].append(edge)
    return transposed, direct


def _grow(seeds, transposed, parent, reached):
    for seed in seeds:
        if reached[seed.source]:
            continue
        reached[seed.source] = 1
        parent[seed.source] = seed.index
        stack = [seed.source]
        while stack:
            vertex = stack.pop()
            for edge in transposed[vertex]:
                if not reached[edge.source]:
                    reached[edge.source] = 1
                    parent[edge.source] = edge.index
                    stack.append(edge.source)


def minmax_biased(graph: DelegationGraph, d) -> Outcome:
    other = _other(graph, d)
    _, bottleneck = min_bottleneck_arborescence(graph)
    transposed, direct = _incoming(graph, graph.restricted(bottleneck))
    parent = [-1] * len(graph.agents)
    reached = bytearray(len(graph.agents))
    _grow(direct[str(d)], transposed, parent, reached)
    _grow(direct[other], transposed, parent, reached)
    tree = Arborescence(graph, tuple(parent))
    logger.debug('minmax biased to %s at bottleneck %d', d, bottleneck)
    return Outcome(tree, tree.votes())


def minsum_biased(graph: DelegationGraph, d) -> Outcome:
    other = _other(graph, d)
    structure = run_fulkerson(graph)
    laminar = structure.laminar
    top_of = {}
    for position in structure.roots:
        for vertex in laminar[position]:
            top_of[vertex] = position

    tight_direct = {alt: [] for alt in graph.alternatives}
    for index in sorted(structure.tight_edges):
        edge = graph.edges[index]
        if edge.is_direct:
            tight_direct[edge.alternative].append(edge)

    entered = {}
    for alternative in (str(d), other):
        for seed in tight_direct[alternative]:
            start = top_of[seed.source]
            if start in entered:
                continue
            entered[start] = (seed.source, seed.index)
            stack = [start]
            while stack:
                position = stack.pop()
                for target in sorted(laminar[position]):
                    for index in structure.tight_into[target]:
                        source = graph.edges[index].source
                        outer = top_of[source]
                        if outer not in entered:
                            entered[outer] = (source, index)
                            stack.append(outer)

    parent = [-1] * len(graph.agents)
    for position, (entry, index) in entered.items():
        parent[entry] = index
        for inner in recursive_arborescence(structure, laminar[position], entry):
            parent[graph.edges[inner].source] = inner
    tree = Arborescence(graph, tuple(parent))
    logger.debug('minsum biased to %s over %d top-level sets', d, len(entered))
    return Outcome(tree, tree.votes())


def _reaching(graph: DelegationGraph, edges, d) -> FrozenSet[str]:
    transposed, direct = _incoming(graph, edges)
    marked = bytearray(len(graph.agents))
    queue = deque()
    for edge in direct[str(d)]:
        if not marked[edge.source]:
            marked[edge.source] = 1
            queue.append(edge.source)
    while queue:
        vertex = queue.popleft()
        for edge in transposed[vertex]:
            if not marked[edge.source]:
                marked[edge.source] = 1
                queue.append(edge.source)
    return frozenset(agent for i, agent in enumerate(graph.agents) if marked[i])


def n_d_membership(graph: DelegationGraph, d) -> Membership:
    _other(graph, d)
    structure = run_fulkerson(graph)
    tight = [graph.edges[index] for index in sorted(structure.tight_edges)]
    _, bottleneck = min_bottleneck_arborescence(graph)
    return Membership(
        alternative=str(d),
        minsum=_reaching(graph, tight, d),
        minmax=_reaching(graph, graph.restricted(bottleneck), d),
    )


def lifted(graph: DelegationGraph) -> DelegationGraph:
    """Replace rank ``i`` by ``X ** i`` with ``X = n + 2``."""
    base = lift_base(len(graph.agents))
    return graph.with_weights(lambda edge: base ** edge.rank)


def leximin(graph: DelegationGraph, bias: Optional[Bias] = Bias.NONE) -> Outcome:
    bias = bias or Bias.NONE
    heavy = lifted(graph)
    if bias.is_none:
        tree = min_cost_arborescence(heavy)
        return Outcome(tree, tree.votes())
    return minsum_biased(heavy, bias.alternative)
