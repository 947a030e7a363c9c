import dataclasses
import itertools
import logging
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from .enums import FunctionClass, Model
from .exceptions import DomainError, PreconditionError
from .functions import DnfFunction, constant, extensionally_equal, is_constant, projection

logger = logging.getLogger(__name__)

BINARY = ('0', '1')


@dataclasses.dataclass(frozen=True)
class Ballot:
    """
    ``B_a = B_a(0) > ... > B_a(k_a - 1) > backup``.  A ballot with no
    entries is a direct vote for its backup.
    """
    owner: str
    entries: Tuple[DnfFunction, ...] = ()
    backup: str = '0'

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(self.entries))
        object.__setattr__(self, 'backup', str(self.backup))

    @classmethod
    def classic(cls, owner, delegates: Sequence[str], backup):
        return cls(owner, tuple(projection(agent) for agent in delegates), backup)

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def is_direct(self) -> bool:
        return not self.entries

    def entry(self, rank) -> DnfFunction:
        """The function at ``rank``; rank ``k`` is the backup as a constant."""
        if not 0 <= rank <= self.k:
            raise PreconditionError(f'Rank {rank} out of range 0..{self.k} for {self.owner}.')
        return self.entries[rank] if rank < self.k else constant(self.backup)

    def describe(self, rank) -> str:
        return str(self.entries[rank]) if rank < self.k else self.backup

    def __str__(self) -> str:
        return ' ≻ '.join([str(entry) for entry in self.entries] + [self.backup])


@dataclasses.dataclass(frozen=True)
class Violation:
    agent: str
    kind: str
    detail: str = ''

    def __str__(self) -> str:
        prefix = f'{self.agent}: ' if self.agent else ''
        return f'{prefix}{self.kind}{" (" + self.detail + ")" if self.detail else ""}'


@dataclasses.dataclass
class ValidationReport:
    model: Model
    violations: List[Violation] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self):
        return {violation.kind for violation in self.violations}


@dataclasses.dataclass(frozen=True)
class Profile:
    ballots: Tuple[Ballot, ...]
    alternatives: Tuple[str, ...] = BINARY

    def __post_init__(self):
        object.__setattr__(self, 'ballots', tuple(self.ballots))
        object.__setattr__(self, 'alternatives', tuple(str(alt) for alt in self.alternatives))
        owners = [ballot.owner for ballot in self.ballots]
        if len(set(owners)) != len(owners):
            duplicates = sorted({owner for owner in owners if owners.count(owner) > 1})
            raise PreconditionError(f'Duplicate agents: {", ".join(duplicates)}.')
        if len(set(self.alternatives)) != len(self.alternatives):
            raise PreconditionError('Duplicate alternatives.')

    @cached_property
    def agents(self) -> Tuple[str, ...]:
        return tuple(ballot.owner for ballot in self.ballots)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {agent: i for i, agent in enumerate(self.agents)}

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def m(self) -> int:
        return self.n + sum(ballot.k for ballot in self.ballots)

    @property
    def ell(self) -> int:
        return max((ballot.k for ballot in self.ballots), default=0)

    @property
    def is_binary(self) -> bool:
        return set(self.alternatives) == set(BINARY)

    def require_binary(self):
        if not self.is_binary:
            raise DomainError(self.alternatives)

    def ballot(self, agent) -> Ballot:
        return self.ballots[self.index[agent]]

    def entry(self, agent, rank) -> DnfFunction:
        return self.ballot(agent).entry(rank)

    def replace_ballot(self, ballot: Ballot):
        ballots = list(self.ballots)
        ballots[self.index[ballot.owner]] = ballot
        return dataclasses.replace(self, ballots=tuple(ballots))

    def with_direct_vote(self, agent, alternative):
        return self.replace_ballot(Ballot(agent, (), alternative))

    def vote_vector(self, votes) -> Tuple[int, ...]:
        return tuple(int(votes[agent]) for agent in self.agents)

    def dual(self):
        """Swap 0 and 1 and dualise every entry (and <-> or)."""
        self.require_binary()
        return dataclasses.replace(self, ballots=tuple(
            Ballot(ballot.owner, tuple(entry.dual() for entry in ballot.entries), str(1 - int(ballot.backup)))
            for ballot in self.ballots
        ))

    def __str__(self) -> str:
        return '\n'.join(f'B_{ballot.owner} = {ballot}' for ballot in self.ballots)


def validate(profile: Profile, model: Model, cap=None) -> ValidationReport:
    report = ValidationReport(model)
    add = report.violations.append
    known = set(profile.agents)

    if model.is_smart and not profile.is_binary:
        add(Violation('', 'non-binary', f'alternatives {list(profile.alternatives)}'))

    for ballot in profile.ballots:
        owner = ballot.owner
        if ballot.backup not in profile.alternatives:
            add(Violation(owner, 'unknown-alternative', ballot.backup))
        for rank, entry in enumerate(ballot.entries):
            if owner in entry.support:
                add(Violation(owner, 'self-reference', f'entry {rank}'))
            for agent in sorted(entry.support - known):
                add(Violation(owner, 'unknown-agent', f'entry {rank} mentions {agent}'))
            if model.is_classic and not entry.is_projection:
                add(Violation(owner, 'non-projection', f'entry {rank} is {entry}'))
            elif is_constant(entry, cap=cap) is not None:
                add(Violation(owner, 'constant-entry', f'entry {rank} is {entry}'))
        for i, j in itertools.combinations(range(ballot.k), 2):
            if extensionally_equal(ballot.entries[i], ballot.entries[j], cap=cap):
                add(Violation(owner, 'duplicate-entry', f'entries {i} and {j}'))

    if report.violations:
        logger.debug('profile has %d violations in %s mode', len(report.violations), model.value)
    return report


def classify(profile: Profile) -> FunctionClass:
    found = {entry.function_class for ballot in profile.ballots for entry in ballot.entries}
    for candidate in FunctionClass:
        if all(candidate.contains(cls) for cls in found):
            return candidate
    return FunctionClass.BOOL
