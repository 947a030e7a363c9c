"""
Delegation graphs of classic profiles.

Vertices are the agents (indices ``0..n-1``) plus the root ``r`` (index
``n``).  Each alternative vertex is merged into ``r``; an edge into ``r``
carries the alternative it votes for.
"""
import dataclasses
import logging
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from ..ballots import BINARY, Ballot, Profile
from ..exceptions import InconsistentCertificate, PreconditionError
from ..utils import sorted_desc

logger = logging.getLogger(__name__)

ROOT_NAME = 'r'


class Edge(NamedTuple):
    index: int
    source: int
    target: int
    rank: int
    weight: int
    alternative: Optional[str] = None

    @property
    def is_direct(self) -> bool:
        return self.alternative is not None


@dataclasses.dataclass(frozen=True)
class Certificate:
    """One selected rank per agent, in agent order."""
    ranks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'ranks', tuple(int(rank) for rank in self.ranks))

    @classmethod
    def for_profile(cls, profile: Profile, ranks):
        if isinstance(ranks, dict):
            ranks = [ranks[agent] for agent in profile.agents]
        certificate = cls(tuple(ranks))
        certificate.check_range(profile)
        return certificate

    def check_range(self, profile: Profile):
        if len(self.ranks) != profile.n:
            raise PreconditionError(f'Certificate has {len(self.ranks)} ranks for {profile.n} agents.')
        for ballot, rank in zip(profile.ballots, self.ranks):
            if not 0 <= rank <= ballot.k:
                raise PreconditionError(f'Rank {rank} out of range 0..{ballot.k} for {ballot.owner}.')

    @property
    def total(self) -> int:
        return sum(self.ranks)

    @property
    def bottleneck(self) -> int:
        return max(self.ranks, default=0)

    @property
    def sorted_desc(self) -> Tuple[int, ...]:
        return sorted_desc(self.ranks)

    def as_dict(self, agents) -> Dict[str, int]:
        return dict(zip(agents, self.ranks))

    def __str__(self) -> str:
        return ','.join(str(rank) for rank in self.ranks)


@dataclasses.dataclass(frozen=True)
class DelegationGraph:
    agents: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    alternatives: Tuple[str, ...] = BINARY

    @property
    def root(self) -> int:
        return len(self.agents)

    @property
    def vertex_count(self) -> int:
        return len(self.agents) + 1

    @cached_property
    def index(self) -> Dict[str, int]:
        return {agent: i for i, agent in enumerate(self.agents)}

    @cached_property
    def out_edges(self) -> Tuple[Tuple[int, ...], ...]:
        grouped = [[] for _ in range(self.vertex_count)]
        for edge in self.edges:
            grouped[edge.source].append(edge.index)
        return tuple(tuple(indices) for indices in grouped)

    @property
    def max_weight(self) -> int:
        return max((edge.weight for edge in self.edges), default=0)

    def name(self, vertex) -> str:
        return ROOT_NAME if vertex == self.root else self.agents[vertex]

    def describe_edge(self, edge: Edge) -> str:
        if edge.is_direct:
            return f'{self.name(edge.source)}→{ROOT_NAME}[{edge.alternative}]'
        return f'{self.name(edge.source)}→{self.name(edge.target)}'

    def edge_key(self, edge: Edge):
        """Identity of an edge that survives rebuilding the graph."""
        return self.name(edge.source), self.name(edge.target), edge.alternative, edge.rank

    def rho(self, vertices: Iterable[int]) -> List[Edge]:
        """Edges leaving the vertex set."""
        inside = set(vertices)
        return [edge for edge in self.edges if edge.source in inside and edge.target not in inside]

    def restricted(self, max_weight) -> List[Edge]:
        return [edge for edge in self.edges if edge.weight <= max_weight]

    def edge_for_rank(self, agent_index, rank) -> Edge:
        for index in self.out_edges[agent_index]:
            if self.edges[index].rank == rank:
                return self.edges[index]
        raise PreconditionError(f'No edge of rank {rank} leaves {self.name(agent_index)}.')

    def with_weights(self, weight_of):
        return dataclasses.replace(self, edges=tuple(edge._replace(weight=weight_of(edge)) for edge in self.edges))

    def with_ballot(self, agent, ballot: Ballot):
        """Replace the out-edges of ``agent`` by those of ``ballot``."""
        source = self.index[agent]
        kept = [edge for edge in self.edges if edge.source != source]
        kept.extend(_ballot_edges(source, ballot, self.index, start=0))
        kept.sort(key=lambda edge: (edge.source, edge.rank))
        return dataclasses.replace(self, edges=tuple(edge._replace(index=i) for i, edge in enumerate(kept)))

    @classmethod
    def from_edges(cls, agents: Sequence[str], specs, alternatives=BINARY):
        """
        Build a graph from ``(source, target_or_None, weight, alternative)``
        tuples.  ``None`` targets the root; ranks equal weights.
        """
        agents = tuple(agents)
        index = {agent: i for i, agent in enumerate(agents)}
        root = len(agents)
        edges = []
        for i, (source, target, weight, alternative) in enumerate(specs):
            if weight < 0:
                raise PreconditionError('Edge weights must be non-negative.')
            if (target is None) != (alternative is not None):
                raise PreconditionError('Exactly the edges into the root carry an alternative.')
            target_index = root if target is None else index[target]
            edges.append(Edge(i, index[source], target_index, weight, weight, alternative))
        return cls(agents, tuple(edges), tuple(alternatives))


def _ballot_edges(source, ballot: Ballot, index, start):
    root = len(index)
    edges = []
    for rank, entry in enumerate(ballot.entries):
        if not entry.is_projection:
            raise PreconditionError(f'Classic ballots need projection entries, {ballot.owner} has {entry}.')
        (clause,) = entry.clauses
        (literal,) = clause
        edges.append(Edge(start + len(edges), source, index[literal.agent], rank, rank))
    edges.append(Edge(start + len(edges), source, root, ballot.k, ballot.k, ballot.backup))
    return edges


def build_graph(profile: Profile) -> DelegationGraph:
    edges = []
    index = profile.index
    for source, ballot in enumerate(profile.ballots):
        edges.extend(_ballot_edges(source, ballot, index, start=len(edges)))
    logger.debug('delegation graph with %d vertices and %d edges', profile.n + 1, len(edges))
    return DelegationGraph(profile.agents, tuple(edges), profile.alternatives)


@dataclasses.dataclass(frozen=True)
class Arborescence:
    """One chosen out-edge (by index) per agent."""
    graph: DelegationGraph
    parent: Tuple[int, ...]

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self.graph.edges[index] for index in self.parent)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.parent)

    @property
    def cost(self) -> int:
        return sum(edge.weight for edge in self.edges)

    @property
    def bottleneck(self) -> int:
        return max((edge.weight for edge in self.edges), default=0)

    @property
    def certificate(self) -> Certificate:
        return Certificate(tuple(edge.rank for edge in self.edges))

    def votes(self) -> Dict[str, str]:
        return votes_from_arborescence(self.graph, self)

    def describe(self) -> List[str]:
        return [self.graph.describe_edge(edge) for edge in self.edges]

    def order(self) -> Tuple[str, ...]:
        """Agents by distance to the root: every delegate precedes its delegators."""
        depth: List[Optional[int]] = [None] * len(self.graph.agents)
        for start in range(len(depth)):
            path = []
            vertex = start
            while vertex < len(depth) and depth[vertex] is None:
                path.append(vertex)
                edge = self.graph.edges[self.parent[vertex]]
                vertex = self.graph.root if edge.is_direct else edge.target
            base = -1 if vertex >= len(depth) else depth[vertex]
            for offset, visited in enumerate(reversed(path), start=1):
                depth[visited] = base + offset
        ranked = sorted(range(len(depth)), key=lambda v: (depth[v], v))
        return tuple(self.graph.agents[v] for v in ranked)


def find_cycle(graph: DelegationGraph, parent: Sequence[int]) -> List[str]:
    """Agents on a cycle of the chosen edges, or an empty list."""
    chosen = nx.DiGraph()
    chosen.add_nodes_from(range(len(graph.agents)))
    for index in parent:
        edge = graph.edges[index]
        if not edge.is_direct and edge.target != graph.root:
            chosen.add_edge(edge.source, edge.target)
    try:
        cycle = nx.find_cycle(chosen)
    except nx.NetworkXNoCycle:
        return []
    return [graph.name(source) for source, _ in cycle]


def arborescence_of(graph: DelegationGraph, certificate: Certificate) -> Arborescence:
    if len(certificate.ranks) != len(graph.agents):
        raise PreconditionError('Certificate length does not match the graph.')
    parent = tuple(graph.edge_for_rank(i, rank).index for i, rank in enumerate(certificate.ranks))
    cycle = find_cycle(graph, parent)
    if cycle:
        raise InconsistentCertificate(cycle)
    return Arborescence(graph, parent)


def certificate_of(tree: Arborescence) -> Certificate:
    return tree.certificate


def votes_from_arborescence(graph: DelegationGraph, tree: Arborescence) -> Dict[str, str]:
    resolved: List[Optional[str]] = [None] * len(graph.agents)
    for start in range(len(graph.agents)):
        path = []
        vertex = start
        while resolved[vertex] is None:
            edge = graph.edges[tree.parent[vertex]]
            if edge.is_direct:
                resolved[vertex] = edge.alternative
                break
            path.append(vertex)
            vertex = edge.target
            if len(path) > len(graph.agents):
                raise InconsistentCertificate([graph.name(v) for v in path])
        for visited in path:
            resolved[visited] = resolved[vertex]
    return dict(zip(graph.agents, resolved))
