"""
Cast monotonicity: an agent switching to a direct vote for ``d`` can neither
remove ``d`` from the possible winners nor add the other alternative.

The check works on vote vectors.  For optimal sets ``F(B)`` and ``F(B')``
the axiom holds for every monotone aggregation function iff

* every ``X`` in ``F(B)`` is dominated (towards ``d``) by some ``X'`` in ``F(B')``, and
* every ``X'`` in ``F(B')`` dominates some ``X`` in ``F(B)``.

When either fails, an aggregation function witnessing the failure is built
and evaluated on both sides.
"""
import dataclasses
import logging
from typing import FrozenSet, Iterator, Optional, Sequence, Tuple

from .ballots import Ballot, Profile
from .conf import get_setting
from .control import leximin, minmax_biased, minsum_biased
from .enums import Bias, CastCondition, Model, Rule
from .exceptions import ParseError, PreconditionError, SupportTooLarge
from .functions import DnfFunction, conjunction, constant, disjunction, majority, projection
from .graph.delegation import build_graph
from .smart import brute, select

logger = logging.getLogger(__name__)

VoteVector = Tuple[int, ...]

COUNTEREXAMPLES = ('minmax-cast', 'minsum-or2-cast')


@dataclasses.dataclass(frozen=True)
class RuleHandle:
    """
    A rule as named on the command line: ``minmax``, ``minsum-biased-1``,
    ``leximin-brute``, ``minmax-biased-0-brute``.
    """
    rule: Rule
    bias: Bias = Bias.NONE
    model: Model = Model.CLASSIC

    @property
    def is_resolute(self) -> bool:
        return not self.bias.is_none

    @classmethod
    def parse(cls, text):
        parts = str(text).strip().lower().split('-')
        try:
            rule = Rule(parts.pop(0))
        except ValueError:
            raise ParseError('rule', f'unknown rule {text!r}')
        model = Model.CLASSIC
        if parts and parts[-1] in ('brute', 'smart'):
            parts.pop()
            model = Model.SMART
        bias = Bias.NONE
        if parts:
            if len(parts) != 2 or parts[0] != 'biased' or parts[1] not in ('0', '1'):
                raise ParseError('rule', f'unknown rule {text!r}')
            bias = Bias(parts[1])
        return cls(rule, bias, model)

    @classmethod
    def all(cls, model: Model = Model.CLASSIC) -> Iterator['RuleHandle']:
        for rule in Rule:
            for bias in Bias:
                yield cls(rule, bias, model)

    def __str__(self) -> str:
        name = self.rule.value
        if self.is_resolute:
            name += f'-biased-{self.bias.value}'
        if self.model.is_smart:
            name += '-brute'
        return name


_CLASSIC_BIASED = {
    Rule.MINSUM: lambda graph, bias: minsum_biased(graph, bias.alternative),
    Rule.MINMAX: lambda graph, bias: minmax_biased(graph, bias.alternative),
    Rule.LEXIMIN: leximin,
}


def optimal_set(profile: Profile, handle: RuleHandle, budget=None, cap=None) -> FrozenSet[VoteVector]:
    """
    ``F(B)`` as vote vectors.  Biased rules give a singleton; irresolute rules
    enumerate every optimum and are refused above ``ENUMERATION_CAP`` agents.
    """
    profile.require_binary()
    if handle.is_resolute and handle.model.is_classic:
        outcome = _CLASSIC_BIASED[handle.rule](build_graph(profile), handle.bias)
        return frozenset({profile.vote_vector(outcome.votes)})

    if not handle.is_resolute:
        limit = get_setting('ENUMERATION_CAP', cap)
        if profile.n > limit:
            raise SupportTooLarge(profile.n, limit)
    result = brute(profile, handle.rule, budget=budget)
    if handle.is_resolute:
        return frozenset({select(result, profile, handle.bias).vector(profile)})
    return result.vote_vectors(profile)


def dominated(x: Sequence[int], y: Sequence[int], d) -> bool:
    """``x <=_d y``: pointwise ``<=`` towards ``d = 1``, ``>=`` towards ``d = 0``."""
    if str(d) == '1':
        return all(a <= b for a, b in zip(x, y))
    return all(a >= b for a, b in zip(x, y))


def conjunction_over(agents) -> DnfFunction:
    agents = list(agents)
    return conjunction(agents) if agents else constant(1)


def disjunction_over(agents) -> DnfFunction:
    agents = list(agents)
    return disjunction(agents) if agents else constant(0)


def aggregate(votes, agg: DnfFunction, agents: Optional[Sequence[str]] = None) -> int:
    """
    Evaluate ``agg`` on a vote vector in ``agents`` order, or on a mapping
    from agent to vote when ``agents`` is omitted.
    """
    if not agg.is_monotone:
        raise PreconditionError('Aggregation functions must be monotone.')
    assignment = dict(zip(agents, votes)) if agents is not None else votes
    return agg.evaluate({agent: int(value) for agent, value in assignment.items()})


def winners(vectors, agg: DnfFunction, agents: Sequence[str]) -> FrozenSet[int]:
    return frozenset(aggregate(votes, agg, agents) for votes in vectors)


def witness_aggregation(vector: VoteVector, agents: Sequence[str], d, condition: CastCondition) -> DnfFunction:
    """
    The monotone function that turns a failure of the pointwise conditions
    into a failure of the winner conditions, thresholded at ``vector``.
    """
    ones = [a for a, v in zip(agents, vector) if v == 1]
    zeros = [a for a, v in zip(agents, vector) if v == 0]
    upward = (str(d) == '1') == (condition == CastCondition.LIFTS_OLD)
    return conjunction_over(ones) if upward else disjunction_over(zeros)


def winner_conditions(before, after, agg: DnfFunction, agents, d) -> Tuple[CastCondition, ...]:
    d = int(d)
    old, new = winners(before, agg, agents), winners(after, agg, agents)
    failed = []
    if d in old and d not in new:
        failed.append(CastCondition.KEEPS_D)
    if 1 - d not in old and 1 - d in new:
        failed.append(CastCondition.NO_NEW_OTHER)
    return tuple(failed)


@dataclasses.dataclass(frozen=True)
class CastReport:
    agent: str
    alternative: str
    handle: RuleHandle
    agents: Tuple[str, ...]
    before: FrozenSet[VoteVector]
    after: FrozenSet[VoteVector]
    failed: Tuple[CastCondition, ...] = ()
    witness: Optional[VoteVector] = None
    direction: Optional[CastCondition] = None
    agg: Optional[DnfFunction] = None
    winners_before: FrozenSet[int] = frozenset()
    winners_after: FrozenSet[int] = frozenset()

    @property
    def holds(self) -> bool:
        return not self.failed


def check_cast_monotonicity(profile: Profile, agent, d, handle: RuleHandle, budget=None, cap=None) -> CastReport:
    profile.require_binary()
    d = str(d)
    if d not in profile.alternatives:
        raise PreconditionError(f'Unknown alternative {d!r}.')
    if agent not in profile.index:
        raise PreconditionError(f'Unknown agent {agent!r}.')

    changed = profile.with_direct_vote(agent, d)
    before = optimal_set(profile, handle, budget=budget, cap=cap)
    after = optimal_set(changed, handle, budget=budget, cap=cap)
    agents = profile.agents

    failed = []
    witness = direction = None
    unmatched_old = [x for x in sorted(before) if not any(dominated(x, y, d) for y in after)]
    unmatched_new = [y for y in sorted(after) if not any(dominated(x, y, d) for x in before)]
    if unmatched_old:
        failed.append(CastCondition.LIFTS_OLD)
        witness, direction = unmatched_old[0], CastCondition.LIFTS_OLD
    if unmatched_new:
        failed.append(CastCondition.COVERS_NEW)
        if witness is None:
            witness, direction = unmatched_new[0], CastCondition.COVERS_NEW

    report = CastReport(agent, d, handle, agents, before, after)
    if witness is None:
        return report

    agg = witness_aggregation(witness, agents, d, direction)
    failed = list(winner_conditions(before, after, agg, agents, d)) + failed
    logger.debug('cast monotonicity fails for %s on %s -> %s: %s',
                 handle, agent, d, ', '.join(c.value for c in failed))
    return dataclasses.replace(
        report,
        failed=tuple(failed),
        witness=witness,
        direction=direction,
        agg=agg,
        winners_before=winners(before, agg, agents),
        winners_after=winners(after, agg, agents),
    )


def _minmax_cast(n, inverted):
    if n < 5 or n % 2 == 0:
        raise PreconditionError('The MinMax instance needs an odd number of agents, at least 5.')
    low, high = ('1', '0') if inverted else ('0', '1')
    sink = 'one' if inverted else 'zero'
    ballots = [
        Ballot('a', (projection("a'"),), high),
        Ballot("a'", (projection('a'),), high),
        Ballot(sink, (), low),
    ]
    ballots += [Ballot(f'u{i}', (projection(sink),), high) for i in range(1, n - 2)]
    return Profile(tuple(ballots)), 'a', high


def _minsum_or2_cast():
    ballots = (
        Ballot('a', (projection('c'), projection('d')), '1'),
        Ballot('b', (projection('zero'),), '1'),
        Ballot('c', (disjunction(['a', 'b']), projection('d')), '1'),
        Ballot('d', (disjunction(['a', 'b']), projection('c')), '1'),
        Ballot('e', (projection('b'),), '1'),
        Ballot('f', (projection('b'),), '1'),
        Ballot('zero', (), '0'),
    )
    return Profile(ballots), 'a', '1'


def build_counterexample(name, n: int = 5, inverted: bool = False) -> Tuple[Profile, str, str]:
    """
    Return ``(profile, agent, d)`` for a known cast monotonicity failure.
    ``minmax-cast`` breaks every MinMax variant (use ``inverted`` for the
    rule biased to 0); ``minsum-or2-cast`` breaks MinSum once Or2 entries
    are allowed.
    """
    if name == 'minmax-cast':
        return _minmax_cast(n, inverted)
    if name == 'minsum-or2-cast':
        return _minsum_or2_cast()
    raise PreconditionError(f'Unknown counterexample {name!r}, expected one of {", ".join(COUNTEREXAMPLES)}.')


__all__ = [
    'RuleHandle', 'CastReport', 'optimal_set', 'check_cast_monotonicity', 'build_counterexample',
    'aggregate', 'majority', 'conjunction_over', 'disjunction_over', 'dominated', 'witness_aggregation',
    'winner_conditions',
]
