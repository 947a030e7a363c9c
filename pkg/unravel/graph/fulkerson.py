"""
Fulkerson's primal-dual algorithm for minimum-cost arborescences.

Only the first phase is run: it yields the tight edges ``E'`` and the laminar
family ``L`` that together describe every minimum-cost arborescence.  The
family is stored in creation order and always includes the singletons.
"""
import dataclasses
import logging
from collections import deque
from functools import cached_property
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from ..ballots import Ballot
from ..exceptions import PreconditionError, RootUnreachable
from .arborescence import check_reachable
from .delegation import ROOT_NAME, Arborescence, DelegationGraph

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class TightStructure:
    graph: DelegationGraph
    tight_edges: FrozenSet[int]
    laminar: Tuple[FrozenSet[int], ...]
    children: Tuple[Tuple[int, ...], ...]
    excluded: Optional[int] = None

    @cached_property
    def roots(self) -> Tuple[int, ...]:
        nested = {child for kids in self.children for child in kids}
        return tuple(i for i in range(len(self.laminar)) if i not in nested)

    @property
    def nontrivial(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(members for members in self.laminar if len(members) > 1)

    @cached_property
    def tight_into(self) -> Tuple[Tuple[int, ...], ...]:
        grouped = [[] for _ in range(self.graph.vertex_count)]
        for index in sorted(self.tight_edges):
            grouped[self.graph.edges[index].target].append(index)
        return tuple(tuple(indices) for indices in grouped)

    @cached_property
    def tight_keys(self) -> FrozenSet[tuple]:
        return frozenset(self.graph.edge_key(self.graph.edges[i]) for i in self.tight_edges)

    def set_index(self, members) -> int:
        members = frozenset(members)
        try:
            return self.laminar.index(members)
        except ValueError:
            raise PreconditionError('Vertex set is not part of the laminar family.')

    def names(self, members) -> List[str]:
        return sorted(self.graph.name(v) for v in members)

    def reaching(self, target) -> bytearray:
        """Vertices with a tight path to ``target``."""
        marked = bytearray(self.graph.vertex_count)
        marked[target] = 1
        queue = deque([target])
        while queue:
            vertex = queue.popleft()
            for index in self.tight_into[vertex]:
                source = self.graph.edges[index].source
                if not marked[source]:
                    marked[source] = 1
                    queue.append(source)
        return marked


def _first_candidate(candidates):
    return min(candidates, key=sorted)


def run_fulkerson(graph: DelegationGraph, exclude: Optional[int] = None,
                  choose: Optional[Callable[[Sequence[FrozenSet[int]]], FrozenSet[int]]] = None) -> TightStructure:
    """
    Run the first phase of Fulkerson's algorithm.

    ``exclude`` names a vertex whose sets are never picked, which gives the
    structure ``E'_a`` that ignores the edges leaving that agent.  ``choose``
    picks among the admissible sets; the default takes the smallest by sorted
    members.
    """
    if exclude is None:
        check_reachable(graph)
    choose = choose or _first_candidate
    root = graph.root
    residual = [edge.weight for edge in graph.edges]
    tight = set()
    tight_graph = nx.DiGraph()
    tight_graph.add_nodes_from(range(graph.vertex_count))

    laminar: List[FrozenSet[int]] = []
    children: List[Tuple[int, ...]] = []
    latest = [None] * graph.vertex_count

    while True:
        component_of = {}
        components = []
        for members in nx.strongly_connected_components(tight_graph):
            for vertex in members:
                component_of[vertex] = len(components)
            components.append(frozenset(members))
        has_exit = [False] * len(components)
        for index in tight:
            edge = graph.edges[index]
            if component_of[edge.source] != component_of[edge.target]:
                has_exit[component_of[edge.source]] = True
        candidates = [
            members for i, members in enumerate(components)
            if not has_exit[i] and root not in members and exclude not in members
        ]
        if not candidates:
            break

        picked = choose(candidates)
        leaving = [index for vertex in picked for index in graph.out_edges[vertex]
                   if graph.edges[index].target not in picked]
        if not leaving:
            raise RootUnreachable([graph.name(v) for v in sorted(picked)])
        reduction = min(residual[index] for index in leaving)
        for index in leaving:
            residual[index] -= reduction
            if residual[index] == 0 and index not in tight:
                tight.add(index)
                edge = graph.edges[index]
                tight_graph.add_edge(edge.source, edge.target)

        position = len(laminar)
        laminar.append(picked)
        children.append(tuple(sorted({latest[v] for v in picked if latest[v] is not None})))
        for vertex in picked:
            latest[vertex] = position
        logger.debug('fulkerson picked %s, reduced by %s', sorted(picked), reduction)

    return TightStructure(graph, frozenset(tight), tuple(laminar), tuple(children), exclude)


def is_min_cost(tree: Arborescence, structure: TightStructure) -> bool:
    if not tree.edge_set <= structure.tight_edges:
        return False
    edges = tree.graph.edges
    for members in structure.laminar:
        leaving = sum(1 for vertex in members if edges[tree.parent[vertex]].target not in members)
        if leaving != 1:
            return False
    return True


def recursive_arborescence(structure: TightStructure, members, vertex) -> FrozenSet[int]:
    """
    Tight edges forming an arborescence of ``G[members]`` rooted at ``vertex``
    that leaves every nested set of the family exactly once.
    """
    members = frozenset(members)
    if vertex not in members:
        raise PreconditionError('Root vertex must belong to the set.')
    if len(members) == 1:
        return frozenset()

    edges = structure.graph.edges
    chosen = []
    pending = [(structure.set_index(members), vertex)]
    while pending:
        position, entry = pending.pop()
        kids = structure.children[position]
        if not kids:
            continue
        owner = {v: kid for kid in kids for v in structure.laminar[kid]}
        entered = {owner[entry]: entry}
        queue = deque([owner[entry]])
        while queue:
            kid = queue.popleft()
            for target in sorted(structure.laminar[kid]):
                for index in structure.tight_into[target]:
                    source_kid = owner.get(edges[index].source)
                    if source_kid is None or source_kid in entered:
                        continue
                    entered[source_kid] = edges[index].source
                    chosen.append(index)
                    queue.append(source_kid)
        if len(entered) != len(kids):
            raise PreconditionError('Set is not strongly connected by tight edges.')
        pending.extend(entered.items())
    return frozenset(chosen)


@dataclasses.dataclass(frozen=True)
class VariantCheck:
    ballot: Ballot
    contains_base: bool
    stray_edges_ok: bool
    direct_vote_ok: Optional[bool]
    extra_edges: FrozenSet[tuple]

    @property
    def holds(self) -> bool:
        return self.contains_base and self.stray_edges_ok and self.direct_vote_ok is not False


@dataclasses.dataclass(frozen=True)
class StabilityReport:
    agent: str
    base_edges: FrozenSet[tuple]
    variants: Tuple[VariantCheck, ...]

    @property
    def holds(self) -> bool:
        return all(variant.holds for variant in self.variants)


def tight_structure_stability_check(graph: DelegationGraph, agent, variants: Sequence[Ballot]) -> StabilityReport:
    """
    Compare the structure computed while never picking a set containing
    ``agent`` against full runs where the agent's ballot is replaced.
    """
    excluded = graph.index[agent]
    base = run_fulkerson(graph, exclude=excluded)

    def agent_last(candidates):
        return min(candidates, key=lambda members: (excluded in members, sorted(members)))

    reaches_agent = base.reaching(excluded)
    reaches_root = base.reaching(graph.root)

    checks = []
    for ballot in variants:
        variant_graph = graph.with_ballot(agent, ballot)
        full = run_fulkerson(variant_graph, choose=agent_last)
        extra = full.tight_keys - base.tight_keys
        stray_ok = all(
            reaches_agent[graph.index[source]] and not reaches_root[graph.index[source]]
            for source, _, _, _ in extra
        )
        direct_ok = None
        if ballot.is_direct:
            direct_ok = full.tight_keys == base.tight_keys | {(agent, ROOT_NAME, ballot.backup, 0)}
        checks.append(VariantCheck(ballot, base.tight_keys <= full.tight_keys, stray_ok, direct_ok, extra))
    return StabilityReport(agent, base.tight_keys, tuple(checks))
