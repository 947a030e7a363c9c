"""
Instance generators: the vertex cover and 3SAT gadget profiles, plus seeded
random profiles for property tests and benchmarks.
"""
import logging
import random
from typing import List, Optional, Sequence, Tuple

from .ballots import BINARY, Ballot, Profile
from .enums import FunctionClass
from .exceptions import PreconditionError
from .functions import Literal, canonicalize, conjunction, disjunction, extensionally_equal, is_constant, projection

logger = logging.getLogger(__name__)

ZERO = 'zero'
ONE = 'one'


def _cover_variables(clauses, variables=None) -> List[str]:
    ordered = list(variables or [])
    for position, clause in enumerate(clauses):
        if len(clause) != 2 or clause[0] == clause[1]:
            raise PreconditionError(f'Clause {position} must hold two distinct variables, got {clause!r}.')
        for variable in clause:
            if variable not in ordered:
                ordered.append(variable)
    for reserved in (ZERO, ONE):
        if reserved in ordered:
            raise PreconditionError(f'Variable name {reserved!r} is reserved.')
    return ordered


def _cover_profile(clauses, budget, multiplier, variables, combine, constant_voter, variable_backup, constant_vote):
    if budget < 0 or multiplier < 1:
        raise PreconditionError('Budget must be non-negative and multiplier positive.')
    names = _cover_variables(clauses, variables)
    ballots = [Ballot(x, (projection(constant_voter),), variable_backup) for x in names]
    ballots.append(Ballot(constant_voter, (), constant_vote))
    for position, (first, second) in enumerate(clauses):
        for copy in range(multiplier * (budget + 1)):
            a = f'cl{position}_g{copy}_a'
            b = f'cl{position}_g{copy}_b'
            ballots.append(Ballot(a, (combine([second, b]),), '0'))
            ballots.append(Ballot(b, (combine([first, a]),), '0'))
    logger.debug('cover gadget profile with %d voters', len(ballots))
    return Profile(tuple(ballots), BINARY)


def gen_minsum_or2(clauses: Sequence[Tuple[str, str]], budget: int, multiplier: int = 1, variables=None) -> Profile:
    """Variables vote ``zero > 1``; every edge gets ``multiplier * (budget + 1)`` or-gadgets."""
    return _cover_profile(clauses, budget, multiplier, variables, disjunction, ZERO, '1', '0')


def gen_minsum_and2(clauses: Sequence[Tuple[str, str]], budget: int, multiplier: int = 1, variables=None) -> Profile:
    """Variables vote ``one > 0``; every edge gets ``multiplier * (budget + 1)`` and-gadgets."""
    return _cover_profile(clauses, budget, multiplier, variables, conjunction, ONE, '0', '1')


def _formula_clauses(phi):
    parsed = []
    for position, clause in enumerate(phi):
        literals = [lit if isinstance(lit, Literal) else Literal.parse(lit) for lit in clause]
        if len(literals) != 3:
            raise PreconditionError(f'Clause {position} must have exactly three literals.')
        signs = {lit.negated for lit in literals}
        if len(signs) != 1:
            raise PreconditionError(f'Clause {position} mixes positive and negative literals.')
        parsed.append(literals)
    return parsed


def gen_minmax_inapprox(phi, k: int) -> Profile:
    """
    3SAT gadgets with ``k`` copies of every gadget voter.  Satisfiable
    formulas admit maximum rank 1, unsatisfiable ones need ``k + 1``.
    """
    if k < 0:
        raise PreconditionError('Gap parameter must be non-negative.')
    clauses = _formula_clauses(phi)
    variables = []
    for clause in clauses:
        for lit in clause:
            if lit.agent not in variables:
                variables.append(lit.agent)
    if ZERO in variables:
        raise PreconditionError(f'Variable name {ZERO!r} is reserved.')

    ballots = [Ballot(x, (projection(ZERO),), '1') for x in variables]
    ballots.append(Ballot(ZERO, (), '0'))
    for position, (first, second, third) in enumerate(clauses):
        combine = conjunction if first.negated else disjunction
        roles = (('a', third.agent, 'c'), ('b', first.agent, 'a'), ('c', second.agent, 'b'))
        for role, variable, partner in roles:
            base = f'cl{position}_{role}'
            copies = [f'{base}{level}' for level in range(1, k + 1)]
            head = combine([variable, f'cl{position}_{partner}'])
            ballots.append(Ballot(base, (head,) + tuple(projection(c) for c in copies), '0'))
            for level, name in enumerate(copies):
                ladder = copies[:level] + [base] + copies[level + 1:]
                ballots.append(Ballot(name, (head,) + tuple(projection(c) for c in ladder), '0'))
    logger.debug('3sat gadget profile with %d voters, gap %d', len(ballots), k)
    return Profile(tuple(ballots), BINARY)


def gen_minmax_orand2(phi) -> Profile:
    """Six voters per clause; maximum rank 1 is achievable iff ``phi`` is satisfiable."""
    return gen_minmax_inapprox(phi, 1)


def _names(n):
    return [f'v{i}' for i in range(n)]


def _pick_others(rng, n, owner, count):
    picked = []
    while len(picked) < count:
        candidate = rng.randrange(n)
        if candidate != owner and candidate not in picked:
            picked.append(candidate)
    return picked


def gen_random_classic(n: int, max_ballot: int, alternatives=BINARY, seed: Optional[int] = None) -> Profile:
    rng = random.Random(seed)
    names = _names(n)
    ballots = []
    for owner in range(n):
        k = rng.randint(0, min(max_ballot, n - 1))
        delegates = [names[i] for i in _pick_others(rng, n, owner, k)]
        ballots.append(Ballot.classic(names[owner], delegates, rng.choice(alternatives)))
    return Profile(tuple(ballots), tuple(alternatives))


def _random_entry(rng, others, function_class, arity):
    if function_class == FunctionClass.ORAND2:
        function_class = rng.choice((FunctionClass.OR2, FunctionClass.AND2))
    if function_class == FunctionClass.LIQUID:
        return projection(rng.choice(others))
    if function_class in (FunctionClass.OR, FunctionClass.OR2, FunctionClass.AND, FunctionClass.AND2):
        limit = 2 if function_class in (FunctionClass.OR2, FunctionClass.AND2) else arity
        chosen = rng.sample(others, rng.randint(1, min(limit, len(others))))
        return disjunction(chosen) if function_class in (FunctionClass.OR, FunctionClass.OR2) else conjunction(chosen)
    clauses = []
    for _ in range(rng.randint(1, 3)):
        literals = []
        for agent in rng.sample(others, rng.randint(1, min(2, len(others)))):
            negated = function_class == FunctionClass.BOOL and rng.random() < 0.3
            literals.append(Literal(agent, negated))
        clauses.append(literals)
    return canonicalize(clauses)


def gen_random_smart(n: int, max_ballot: int, function_class: FunctionClass = FunctionClass.MON,
                     seed: Optional[int] = None, arity: int = 3) -> Profile:
    """Random binary profile whose entries all lie in ``function_class``."""
    rng = random.Random(seed)
    names = _names(n)
    ballots = []
    for owner in range(n):
        others = names[:owner] + names[owner + 1:]
        entries = []
        if others:
            wanted = rng.randint(0, max_ballot)
            for _ in range(4 * wanted):
                if len(entries) == wanted:
                    break
                entry = _random_entry(rng, others, function_class, arity)
                if is_constant(entry) is not None or any(extensionally_equal(entry, e) for e in entries):
                    continue
                entries.append(entry)
        ballots.append(Ballot(names[owner], tuple(entries), rng.choice(BINARY)))
    return Profile(tuple(ballots), BINARY)
