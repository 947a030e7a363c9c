"""
Unravelling smart ballots.

A certificate is consistent when repeatedly resolving any agent whose selected
function has become constant eventually resolves everyone.  The exhaustive
search below enumerates certificates component by component along the
dependency graph: an agent only ever waits on agents its selected functions
mention, so a component can be resolved once everything it depends on is.
"""
import dataclasses
import itertools
import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from .ballots import Profile, classify
from .conf import get_setting
from .enums import Bias, FunctionClass, Rule
from .exceptions import BudgetExceeded, ClassMismatch, SupportTooLarge
from .graph.delegation import Certificate
from .utils import lift_base

logger = logging.getLogger(__name__)

SUGGESTION = 'Use the classic model, the Or/And solver for MinMax, or a smaller instance.'


class _Entry:
    """A ballot entry compiled against agent indices."""

    __slots__ = ('function', 'clauses', 'constant', 'monotone', 'depends', 'names')

    def __init__(self, function, index, names):
        self.function = function
        self.constant = function.constant_value
        self.monotone = function.is_monotone
        self.clauses = tuple(
            tuple((index[lit.agent], lit.negated) for lit in clause) for clause in function.sorted_clauses
        )
        self.depends = tuple(sorted({index[agent] for agent in function.support}))
        self.names = names

    def value(self, values, cap=None) -> Optional[int]:
        if self.constant is not None:
            return self.constant
        undecided = False
        for clause in self.clauses:
            satisfied = True
            for position, negated in clause:
                known = values[position]
                if known is None:
                    satisfied = False
                elif known == negated:
                    break
            else:
                if satisfied:
                    return 1
                undecided = True
        if not undecided:
            return 0
        if self.monotone:
            return None
        known = {self.names[i]: values[i] for i in self.depends if values[i] is not None}
        return self.function.evaluate_partial(known, cap=cap)


def _compile(profile: Profile):
    profile.require_binary()
    index = profile.index
    names = profile.agents
    return [
        [_Entry(ballot.entry(rank), index, names) for rank in range(ballot.k + 1)]
        for ballot in profile.ballots
    ]


def _propagate(chosen, members, values, rng=None, cap=None) -> List[int]:
    """
    Resolve ``members`` in place, returning the resolution order.  ``chosen``
    maps each member to its selected entry; other agents must be resolved
    already or stay unresolved.
    """
    dependents = {a: [] for a in members}
    for a in members:
        for dep in chosen[a].depends:
            if dep in dependents:
                dependents[dep].append(a)
    queue = list(members)
    if rng is not None:
        rng.shuffle(queue)
    queued = set(members)
    order = []
    while queue:
        if rng is not None:
            pick = rng.randrange(len(queue))
            queue[pick], queue[-1] = queue[-1], queue[pick]
        agent = queue.pop()
        queued.discard(agent)
        if values[agent] is not None:
            continue
        value = chosen[agent].value(values, cap)
        if value is None:
            continue
        values[agent] = value
        order.append(agent)
        for waiting in dependents[agent]:
            if values[waiting] is None and waiting not in queued:
                queue.append(waiting)
                queued.add(waiting)
    return order


@dataclasses.dataclass
class UnravelState:
    values: List[Optional[int]]
    order: List[int] = dataclasses.field(default_factory=list)


@dataclasses.dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    votes: Dict[str, str]
    order: Tuple[str, ...]
    stuck: FrozenSet[str]


def check_consistency(profile: Profile, certificate: Certificate, rng=None, cap=None) -> ConsistencyResult:
    entries = _compile(profile)
    certificate.check_range(profile)
    state = UnravelState([None] * profile.n)
    chosen = {a: entries[a][rank] for a, rank in enumerate(certificate.ranks)}
    state.order = _propagate(chosen, list(range(profile.n)), state.values, rng=rng, cap=cap)
    names = profile.agents
    return ConsistencyResult(
        consistent=len(state.order) == profile.n,
        votes={names[a]: str(v) for a, v in enumerate(state.values) if v is not None},
        order=tuple(names[a] for a in state.order),
        stuck=frozenset(names[a] for a, v in enumerate(state.values) if v is None),
    )


def count_fixed_points(profile: Profile, certificate: Certificate, cap=None) -> int:
    cap = get_setting('FIXED_POINT_CAP', cap)
    if profile.n > cap:
        raise SupportTooLarge(profile.n, cap)
    entries = _compile(profile)
    certificate.check_range(profile)
    chosen = [entries[a][rank] for a, rank in enumerate(certificate.ranks)]
    count = 0
    for bits in itertools.product((0, 1), repeat=profile.n):
        if all(entry.value(bits) == bits[a] for a, entry in enumerate(chosen)):
            count += 1
    return count


@dataclasses.dataclass(frozen=True)
class Solution:
    certificate: Certificate
    votes: Dict[str, str]
    order: Tuple[str, ...]

    def vector(self, profile: Profile) -> Tuple[int, ...]:
        return profile.vote_vector(self.votes)


@dataclasses.dataclass(frozen=True)
class SearchResult:
    """
    Optimal solutions in canonical (vote vector, certificate) order.  ``value``
    is the sum, the maximum or the descending rank vector; None when nothing
    within the requested limit exists.
    """
    rule: Rule
    value: object
    solutions: Tuple[Solution, ...]
    examined: int = 0
    solver: str = 'search'

    @property
    def found(self) -> bool:
        return bool(self.solutions)

    @property
    def best(self) -> Solution:
        return self.solutions[0]

    def vote_vectors(self, profile: Profile) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(solution.vector(profile) for solution in self.solutions)

    def certificates(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(solution.certificate.ranks for solution in self.solutions)


@dataclasses.dataclass
class _Leaf:
    ranks: Dict[int, int]
    values: Tuple[Optional[int], ...]
    order: List[int]
    top_options: List[list]


class _Search:
    """
    Branch over the local certificates of every strongly connected component
    of the dependency graph, sinks first.  Components nobody depends on are
    optimised independently once everything below them is fixed.
    """

    def __init__(self, profile: Profile, budget=None, cap=None):
        self.profile = profile
        self.entries = _compile(profile)
        self.budget = get_setting('BRUTE_BUDGET', budget)
        self.cap = cap
        self.examined = 0

    def _tick(self, amount=1):
        self.examined += amount
        if self.examined > self.budget:
            raise BudgetExceeded(self.examined, self.budget, SUGGESTION)

    def _components(self, rank_cap):
        dependency = nx.DiGraph()
        dependency.add_nodes_from(range(self.profile.n))
        for a, options in enumerate(self.entries):
            for entry in options[:rank_cap[a] + 1]:
                dependency.add_edges_from((a, dep) for dep in entry.depends)
        condensed = nx.condensation(dependency)
        order = list(reversed(list(nx.topological_sort(condensed))))
        members = {c: tuple(sorted(condensed.nodes[c]['members'])) for c in condensed}
        inner = [members[c] for c in order if condensed.in_degree(c) > 0]
        top = [members[c] for c in order if condensed.in_degree(c) == 0]
        return inner, top

    def _options(self, members, rank_cap, values, weight):
        options = []
        for ranks in itertools.product(*(range(rank_cap[a] + 1) for a in members)):
            self._tick()
            chosen = {a: self.entries[a][rank] for a, rank in zip(members, ranks)}
            order = _propagate(chosen, members, values, cap=self.cap)
            if len(order) == len(members):
                cost = sum(weight(rank) for rank in ranks) if weight else 0
                options.append((cost, ranks, tuple(values[a] for a in members), order))
            for a in members:
                values[a] = None
        options.sort(key=lambda option: option[0])
        return options

    def run(self, rank_cap, weight=None, bound=None, collect=True):
        """
        Explore certificates with ``rank_a <= rank_cap[a]``.  With ``weight``
        the additive cost is minimised (ties kept); without it every
        consistent certificate is optimal.  Returns (value, leaves).
        """
        inner, top = self._components(rank_cap)
        values = [None] * self.profile.n
        state = {'best': bound, 'leaves': [], 'done': False}
        ranks, order = {}, []

        def better(cost):
            return state['best'] is None or cost <= state['best']

        def leaf(cost):
            top_options = []
            for members in top:
                options = self._options(members, rank_cap, values, weight)
                if not options:
                    return
                least = options[0][0]
                top_options.append((members, [o for o in options if o[0] == least] if collect else options[:1]))
                cost += least
            if not better(cost):
                return
            if state['best'] is None or cost < state['best']:
                state['best'] = cost
                state['leaves'].clear()
            if collect or not state['leaves']:
                state['leaves'].append(_Leaf(dict(ranks), tuple(values), list(order), top_options))
            if not collect and weight is None:
                state['done'] = True

        def descend(position, cost):
            if state['done']:
                return
            if position == len(inner):
                leaf(cost)
                return
            members = inner[position]
            for option_cost, option_ranks, option_values, option_order in self._options(members, rank_cap, values, weight):
                if not better(cost + option_cost):
                    break
                for a, rank, value in zip(members, option_ranks, option_values):
                    ranks[a] = rank
                    values[a] = value
                order.extend(option_order)
                descend(position + 1, cost + option_cost)
                del order[len(order) - len(option_order):]
                for a in members:
                    values[a] = None
                    del ranks[a]
                if state['done']:
                    return

        descend(0, 0)
        if not state['leaves']:
            return None, []
        return state['best'], state['leaves']

    def expand(self, leaves) -> List[Solution]:
        names = self.profile.agents
        solutions = []
        for leaf in leaves:
            for combination in itertools.product(*(options for _, options in leaf.top_options)):
                self._tick()
                ranks = dict(leaf.ranks)
                values = list(leaf.values)
                order = list(leaf.order)
                for (members, _), (_, option_ranks, option_values, option_order) in zip(leaf.top_options, combination):
                    for a, rank, value in zip(members, option_ranks, option_values):
                        ranks[a] = rank
                        values[a] = value
                    order.extend(option_order)
                solutions.append(Solution(
                    Certificate(tuple(ranks[a] for a in range(self.profile.n))),
                    {names[a]: str(values[a]) for a in range(self.profile.n)},
                    tuple(names[a] for a in order),
                ))
        solutions.sort(key=lambda s: (s.vector(self.profile), s.certificate.ranks))
        return solutions

    def full_caps(self, ceiling=None):
        return [ballot.k if ceiling is None else min(ballot.k, ceiling) for ballot in self.profile.ballots]

    def bottleneck(self, limit=None):
        """Smallest feasible maximum rank, with its leaves."""
        highest = self.profile.ell if limit is None else min(limit, self.profile.ell)
        for ceiling in range(highest + 1):
            _, leaves = self.run(self.full_caps(ceiling), collect=False)
            if leaves:
                logger.debug('search: feasible at maximum rank %d after %d certificates', ceiling, self.examined)
                return ceiling
        return None


def brute_minsum(profile: Profile, budget=None, limit=None, collect=True, cap=None) -> SearchResult:
    search = _Search(profile, budget, cap)
    value, leaves = search.run(search.full_caps(), weight=lambda rank: rank, bound=limit, collect=collect)
    return SearchResult(Rule.MINSUM, value, tuple(search.expand(leaves)), search.examined)


def brute_minmax(profile: Profile, budget=None, limit=None, collect=True, cap=None) -> SearchResult:
    search = _Search(profile, budget, cap)
    ceiling = search.bottleneck(limit)
    if ceiling is None:
        return SearchResult(Rule.MINMAX, None, (), search.examined)
    _, leaves = search.run(search.full_caps(ceiling), collect=collect)
    return SearchResult(Rule.MINMAX, ceiling, tuple(search.expand(leaves)), search.examined)


def brute_leximin(profile: Profile, budget=None, collect=True, cap=None) -> SearchResult:
    search = _Search(profile, budget, cap)
    ceiling = search.bottleneck()
    base = lift_base(profile.n)
    _, leaves = search.run(search.full_caps(ceiling), weight=lambda rank: base ** rank, collect=collect)
    solutions = tuple(search.expand(leaves))
    return SearchResult(Rule.LEXIMIN, solutions[0].certificate.sorted_desc, solutions, search.examined)


BRUTE_SOLVERS = {
    Rule.MINSUM: brute_minsum,
    Rule.MINMAX: brute_minmax,
    Rule.LEXIMIN: brute_leximin,
}


def brute(profile: Profile, rule: Rule, **kwargs) -> SearchResult:
    return BRUTE_SOLVERS[rule](profile, **kwargs)


def select(result: SearchResult, profile: Profile, bias: Bias = Bias.NONE) -> Solution:
    """
    Pick the reported solution: the canonical first one, or for a bias the
    first one realising the most votes for that alternative.
    """
    if bias.is_none:
        return result.best
    d = bias.alternative
    return max(result.solutions, key=lambda s: sum(1 for v in s.votes.values() if v == d))


def _or_certificate(profile: Profile, ceiling) -> Optional[Certificate]:
    """
    Build a certificate with every rank at most ``ceiling`` for an Or
    profile, or None if none exists.
    """
    n = profile.n
    index = profile.index
    ranks: List[Optional[int]] = [None] * n
    labels: List[Optional[int]] = [None] * n
    incoming = [[] for _ in range(n)]
    sinks = []
    for a, ballot in enumerate(profile.ballots):
        top = min(ballot.k, ceiling)
        constants = []
        for rank in range(top + 1):
            entry = ballot.entry(rank)
            if entry.constant_value is not None:
                constants.append((rank, entry.constant_value))
            else:
                for agent in sorted(entry.support):
                    incoming[index[agent]].append((a, rank))
        sinks.append(constants)
        ones = [rank for rank, value in constants if value == 1]
        if ones:
            ranks[a] = ones[0]
            labels[a] = 1

    frontier = [a for a in range(n) if labels[a] == 1]
    while frontier:
        b = frontier.pop()
        for a, rank in incoming[b]:
            if ranks[a] is None:
                ranks[a] = rank
                labels[a] = 1
                frontier.append(a)

    for a in range(n):
        if ranks[a] is None:
            zeros = [rank for rank, value in sinks[a] if value == 0]
            if zeros:
                ranks[a] = zeros[0]
                labels[a] = 0

    progress = True
    while progress:
        progress = False
        for a, ballot in enumerate(profile.ballots):
            if ranks[a] is not None:
                continue
            for rank in range(min(ballot.k, ceiling) + 1):
                entry = ballot.entry(rank)
                if all(labels[index[agent]] is not None for agent in entry.support):
                    ranks[a] = rank
                    labels[a] = 0
                    progress = True
                    break

    if any(rank is None for rank in ranks):
        return None
    return Certificate(tuple(ranks))


def minmax_or(profile: Profile) -> SearchResult:
    profile.require_binary()
    found = classify(profile)
    if not found.within_or:
        raise ClassMismatch(FunctionClass.OR, found)
    low, high = 0, profile.ell
    best = _or_certificate(profile, high)
    while low < high:
        middle = (low + high) // 2
        certificate = _or_certificate(profile, middle)
        logger.debug('or-solver: ceiling %d %s', middle, 'feasible' if certificate else 'infeasible')
        if certificate is None:
            low = middle + 1
        else:
            high = middle
            best = certificate
    outcome = check_consistency(profile, best)
    solution = Solution(best, outcome.votes, outcome.order)
    return SearchResult(Rule.MINMAX, best.bottleneck, (solution,), solver='or')


def minmax_and(profile: Profile) -> SearchResult:
    profile.require_binary()
    found = classify(profile)
    if not found.within_and:
        raise ClassMismatch(FunctionClass.AND, found)
    dual = minmax_or(profile.dual())
    solution = dual.best
    votes = {agent: str(1 - int(value)) for agent, value in solution.votes.items()}
    return dataclasses.replace(dual, solutions=(Solution(solution.certificate, votes, solution.order),), solver='and')
