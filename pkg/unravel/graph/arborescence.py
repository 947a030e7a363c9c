"""
Optimal arborescences of a delegation graph.

``min_cost_arborescence`` is the contraction algorithm over mergeable
heaps with lazy weight offsets, run towards the root ``r``.
``min_bottleneck_arborescence`` adds edges level by level and grows the set
of vertices that already reach ``r``.
"""
import logging
from collections import deque
from typing import Tuple

from ..exceptions import RootUnreachable
from .delegation import Arborescence, DelegationGraph

logger = logging.getLogger(__name__)


class _HeapNode:
    __slots__ = ('key', 'edge', 'delta', 'left', 'right', 'rank')

    def __init__(self, key, edge):
        self.key = key
        self.edge = edge
        self.delta = 0
        self.left = None
        self.right = None
        self.rank = 1


def _push(node):
    if node.delta:
        node.key += node.delta
        if node.left is not None:
            node.left.delta += node.delta
        if node.right is not None:
            node.right.delta += node.delta
        node.delta = 0


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    _push(a)
    _push(b)
    if b.key < a.key:
        a, b = b, a
    a.right = _merge(a.right, b)
    if a.left is None or a.left.rank < a.right.rank:
        a.left, a.right = a.right, a.left
    a.rank = a.right.rank + 1 if a.right is not None else 1
    return a


def _pop(node):
    _push(node)
    return _merge(node.left, node.right)


class _RollbackUnionFind:

    def __init__(self, size):
        self.parent = [-1] * size
        self.history = []

    def find(self, x):
        while self.parent[x] >= 0:
            x = self.parent[x]
        return x

    def time(self):
        return len(self.history)

    def rollback(self, t):
        while len(self.history) > t:
            index, value = self.history.pop()
            self.parent[index] = value

    def join(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.parent[a] > self.parent[b]:
            a, b = b, a
        self.history.append((a, self.parent[a]))
        self.history.append((b, self.parent[b]))
        self.parent[a] += self.parent[b]
        self.parent[b] = a
        return True


def reaching_root(graph: DelegationGraph) -> bytearray:
    """Mark every vertex that has a path to the root."""
    incoming = [[] for _ in range(graph.vertex_count)]
    for edge in graph.edges:
        incoming[edge.target].append(edge.source)
    marked = bytearray(graph.vertex_count)
    marked[graph.root] = 1
    queue = deque([graph.root])
    while queue:
        vertex = queue.popleft()
        for source in incoming[vertex]:
            if not marked[source]:
                marked[source] = 1
                queue.append(source)
    return marked


def check_reachable(graph: DelegationGraph):
    marked = reaching_root(graph)
    stranded = [graph.agents[v] for v in range(len(graph.agents)) if not marked[v]]
    if stranded:
        raise RootUnreachable(stranded)


def min_cost_arborescence(graph: DelegationGraph) -> Arborescence:
    check_reachable(graph)
    size = graph.vertex_count
    root = graph.root
    sources = [edge.source for edge in graph.edges]
    targets = [edge.target for edge in graph.edges]

    heaps = [None] * size
    for edge in graph.edges:
        heaps[edge.source] = _merge(heaps[edge.source], _HeapNode(edge.weight, edge.index))

    components = _RollbackUnionFind(size)
    seen = [-1] * size
    seen[root] = root
    path = [0] * size
    queue = [0] * size
    incoming = [None] * size
    cycles = []

    for start in range(size):
        vertex = start
        depth = 0
        while seen[vertex] < 0:
            heap = heaps[vertex]
            if heap is None:
                raise RootUnreachable([graph.name(vertex)])
            _push(heap)
            chosen, weight = heap.edge, heap.key
            heap.delta -= weight
            heaps[vertex] = _pop(heap)
            queue[depth] = chosen
            path[depth] = vertex
            depth += 1
            seen[vertex] = start
            vertex = components.find(targets[chosen])
            if seen[vertex] == start:
                merged = None
                end = depth
                stamp = components.time()
                while True:
                    depth -= 1
                    member = path[depth]
                    merged = _merge(merged, heaps[member])
                    if not components.join(vertex, member):
                        break
                vertex = components.find(vertex)
                heaps[vertex] = merged
                seen[vertex] = -1
                cycles.append((vertex, stamp, queue[depth:end]))
        for i in range(depth):
            incoming[components.find(sources[queue[i]])] = queue[i]

    for vertex, stamp, contracted in reversed(cycles):
        components.rollback(stamp)
        entering = incoming[vertex]
        for index in contracted:
            incoming[components.find(sources[index])] = index
        incoming[components.find(sources[entering])] = entering

    logger.debug('min-cost arborescence after %d contractions', len(cycles))
    return Arborescence(graph, tuple(incoming[:root]))


def min_bottleneck_arborescence(graph: DelegationGraph) -> Tuple[Arborescence, int]:
    """
    Return an arborescence whose largest edge weight ``w*`` is minimal,
    together with ``w*``.
    """
    size = graph.vertex_count
    root = graph.root
    if size == 1:
        return Arborescence(graph, ()), 0

    weight_limit = graph.max_weight
    if weight_limit <= 4 * len(graph.edges) + 16:
        buckets = [[] for _ in range(weight_limit + 1)]
        for edge in graph.edges:
            buckets[edge.weight].append(edge)
        levels = enumerate(buckets)
    else:
        grouped = {}
        for edge in graph.edges:
            grouped.setdefault(edge.weight, []).append(edge)
        levels = ((weight, grouped[weight]) for weight in sorted(grouped))

    sources = [edge.source for edge in graph.edges]
    transposed = [[] for _ in range(size)]
    reached = bytearray(size)
    reached[root] = 1
    count = 1
    parent = [-1] * size

    for weight, bucket in levels:
        for edge in bucket:
            transposed[edge.target].append(edge.index)
            if not reached[edge.target] or reached[edge.source]:
                continue
            reached[edge.source] = 1
            parent[edge.source] = edge.index
            count += 1
            stack = [edge.source]
            while stack:
                vertex = stack.pop()
                for index in transposed[vertex]:
                    source = sources[index]
                    if not reached[source]:
                        reached[source] = 1
                        parent[source] = index
                        count += 1
                        stack.append(source)
        if count == size:
            logger.debug('bottleneck arborescence closes at weight %d', weight)
            return Arborescence(graph, tuple(parent[:root])), weight

    raise RootUnreachable([graph.agents[v] for v in range(root) if not reached[v]])
