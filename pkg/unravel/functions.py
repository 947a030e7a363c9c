"""
Boolean functions of other agents' votes, kept in canonical DNF.

A function is a set of clauses, each clause a set of literals.  The empty
clause set is the constant 0 and the set holding only the empty clause is
the constant 1.  Monotone canonical forms are the sets of prime implicants,
so structural equality decides extensional equality for them; functions with
negated literals fall back to truth tables bounded by ``UNRAVEL_SUPPORT_CAP``.
"""
import dataclasses
import itertools
import logging
from functools import cached_property
from typing import FrozenSet, Iterable, Mapping, Optional, Tuple

from .conf import get_setting
from .enums import FunctionClass, Target
from .exceptions import PreconditionError, SupportTooLarge

logger = logging.getLogger(__name__)

PartialAssignment = Mapping[str, Optional[int]]

Clause = FrozenSet['Literal']


@dataclasses.dataclass(frozen=True, order=True)
class Literal:
    agent: str
    negated: bool = False

    def __str__(self) -> str:
        return f'!{self.agent}' if self.negated else self.agent

    @classmethod
    def parse(cls, text):
        text = text.strip()
        negated = text.startswith('!')
        agent = text[1:].strip() if negated else text
        if not agent:
            raise PreconditionError(f'Empty literal {text!r}.')
        return cls(agent, negated)

    def negate(self):
        return Literal(self.agent, not self.negated)

    def holds(self, value) -> bool:
        return bool(value) != self.negated


def _as_literal(item):
    if isinstance(item, Literal):
        return item
    return Literal.parse(item)


def _minimize(clauses):
    """Deduplicate and drop every clause that is a superset of another one."""
    kept = []
    for clause in sorted(set(clauses), key=len):
        if not any(other <= clause for other in kept):
            kept.append(clause)
    return frozenset(kept)


@dataclasses.dataclass(frozen=True)
class DnfFunction:
    clauses: FrozenSet[Clause]

    @property
    def kind(self):
        if not self.clauses:
            return 'constant-0'
        if frozenset() in self.clauses:
            return 'constant-1'
        return 'general'

    @property
    def constant_value(self) -> Optional[int]:
        """The structural constant, or None for a general form."""
        return {'constant-0': 0, 'constant-1': 1}.get(self.kind)

    @cached_property
    def sorted_clauses(self) -> Tuple[Tuple[Literal, ...], ...]:
        return tuple(sorted(tuple(sorted(clause)) for clause in self.clauses))

    @cached_property
    def support(self) -> FrozenSet[str]:
        return frozenset(lit.agent for clause in self.clauses for lit in clause)

    @cached_property
    def is_monotone(self) -> bool:
        return not any(lit.negated for clause in self.clauses for lit in clause)

    @property
    def is_projection(self) -> bool:
        if len(self.clauses) != 1:
            return False
        (clause,) = self.clauses
        return len(clause) == 1 and not next(iter(clause)).negated

    @property
    def is_or(self) -> bool:
        return self.is_monotone and all(len(clause) <= 1 for clause in self.clauses)

    @property
    def is_or2(self) -> bool:
        return self.is_or and len(self.clauses) <= 2

    @property
    def is_and(self) -> bool:
        return self.is_monotone and len(self.clauses) <= 1

    @property
    def is_and2(self) -> bool:
        return self.is_and and all(len(clause) <= 2 for clause in self.clauses)

    @property
    def function_class(self) -> FunctionClass:
        if self.constant_value is not None or self.is_projection:
            return FunctionClass.LIQUID
        if self.is_or2:
            return FunctionClass.OR2
        if self.is_and2:
            return FunctionClass.AND2
        if self.is_or:
            return FunctionClass.OR
        if self.is_and:
            return FunctionClass.AND
        if self.is_monotone:
            return FunctionClass.MON
        return FunctionClass.BOOL

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        """Evaluate on an assignment that covers the support."""
        return int(any(all(lit.holds(assignment[lit.agent]) for lit in clause) for clause in self.clauses))

    def evaluate_partial(self, values: PartialAssignment, cap=None) -> Optional[int]:
        """
        Return the value forced by ``values`` or None if it is not yet determined.
        """
        undecided = False
        for clause in self.clauses:
            satisfied = True
            for lit in clause:
                value = values.get(lit.agent)
                if value is None:
                    satisfied = False
                elif not lit.holds(value):
                    break
            else:
                if satisfied:
                    return 1
                undecided = True
        if not undecided:
            return 0
        if self.is_monotone:
            return None
        return is_constant(partial_eval(self, values), cap=cap)

    def dual(self):
        """
        The De Morgan dual ``not f(not x)`` of a monotone function, i.e. the
        minimal transversals of the clause set.
        """
        if not self.is_monotone:
            raise PreconditionError('Dual is only defined structurally for monotone functions.')
        transversals = {frozenset()}
        for clause in self.sorted_clauses:
            extended = set()
            for current in transversals:
                if current.intersection(clause):
                    extended.add(current)
                else:
                    extended.update(current | {lit} for lit in clause)
            transversals = _minimize(extended)
        return DnfFunction(frozenset(transversals))

    def __str__(self) -> str:
        if self.constant_value is not None:
            return str(self.constant_value)
        parts = []
        for clause in self.sorted_clauses:
            text = ' ∧ '.join(str(lit) for lit in clause)
            parts.append(f'({text})' if len(clause) > 1 and len(self.clauses) > 1 else text)
        return ' ∨ '.join(parts)

    def as_clause_lists(self):
        return [[str(lit) for lit in clause] for clause in self.sorted_clauses]


def canonicalize(raw: Iterable[Iterable]) -> DnfFunction:
    clauses = []
    for raw_clause in raw:
        clause = frozenset(_as_literal(item) for item in raw_clause)
        if any(lit.negate() in clause for lit in clause):
            continue
        clauses.append(clause)
    return DnfFunction(_minimize(clauses))


def constant(value) -> DnfFunction:
    return DnfFunction(frozenset({frozenset()}) if int(value) else frozenset())


def projection(agent) -> DnfFunction:
    return DnfFunction(frozenset({frozenset({Literal(agent)})}))


def disjunction(agents) -> DnfFunction:
    return canonicalize([[agent] for agent in agents])


def conjunction(agents) -> DnfFunction:
    return canonicalize([list(agents)])


def majority(agents) -> DnfFunction:
    agents = list(agents)
    if len(agents) % 2 == 0:
        raise PreconditionError('Majority needs an odd number of arguments.')
    quorum = (len(agents) + 1) // 2
    return canonicalize(itertools.combinations(agents, quorum))


def parse(clauses) -> DnfFunction:
    """Build a function from the file syntax: a list of lists of literal strings."""
    return canonicalize([[Literal.parse(text) for text in clause] for clause in clauses])


def partial_eval(f: DnfFunction, nu: PartialAssignment) -> DnfFunction:
    clauses = []
    for clause in f.clauses:
        remaining = []
        for lit in clause:
            value = nu.get(lit.agent)
            if value is None:
                remaining.append(lit)
            elif not lit.holds(value):
                break
        else:
            clauses.append(remaining)
    return canonicalize(clauses)


def _assignments(support, cap=None):
    variables = sorted(support)
    cap = get_setting('SUPPORT_CAP', cap)
    if len(variables) > cap:
        raise SupportTooLarge(len(variables), cap)
    for bits in itertools.product((0, 1), repeat=len(variables)):
        yield dict(zip(variables, bits))


def is_constant(f: DnfFunction, cap=None) -> Optional[int]:
    value = f.constant_value
    if value is not None or f.is_monotone:
        return value
    seen = {f.evaluate(assignment) for assignment in _assignments(f.support, cap)}
    return seen.pop() if len(seen) == 1 else None


def extensionally_equal(f: DnfFunction, g: DnfFunction, cap=None) -> bool:
    if f.is_monotone and g.is_monotone:
        return f.clauses == g.clauses
    return all(
        f.evaluate(assignment) == g.evaluate(assignment)
        for assignment in _assignments(f.support | g.support, cap)
    )


def find_binary_simulation(f: DnfFunction, target: Target):
    """
    Find agents p != q and a partial assignment fixing every other variable
    such that ``partial_eval(f, nu)`` is ``x_p and x_q`` (or ``x_p or x_q``).

    Returns None when f already is a disjunction (resp. conjunction).
    """
    if not f.is_monotone:
        raise PreconditionError('Binary simulation requires a monotone function.')
    if target == Target.OR:
        found = find_binary_simulation(f.dual(), Target.AND)
        if found is None:
            return None
        p, q, nu = found
        return p, q, {agent: 1 - value for agent, value in nu.items()}

    for clause in f.sorted_clauses:
        if len(clause) > 1:
            p, q = clause[0].agent, clause[1].agent
            inside = {lit.agent for lit in clause}
            nu = {agent: 0 for agent in f.support - inside}
            nu.update({agent: 1 for agent in inside - {p, q}})
            logger.debug('simulating and of %s, %s inside %s', p, q, f)
            return p, q, nu
    return None
