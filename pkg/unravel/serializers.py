"""
Ballot files.

    {"alternatives": ["0", "1"],
     "agents": [{"name": "a", "entries": [{"delegate": "b"}, {"dnf": [["c", "!d"]]}], "backup": "1"}]}

Both models share the format; classic profiles simply use ``delegate``
entries only.
"""
import json
import logging
from pathlib import Path

from .ballots import BINARY, Ballot, Profile
from .exceptions import ParseError, PreconditionError
from .functions import Literal, canonicalize, projection

logger = logging.getLogger(__name__)


def _expect(value, kind, location):
    if not isinstance(value, kind):
        expected = {list: 'a list', dict: 'an object', str: 'a string'}[kind]
        raise ParseError(location, f'expected {expected}, got {type(value).__name__}')
    return value


def _name(value, location):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = str(value)
    value = _expect(value, str, location).strip()
    if not value:
        raise ParseError(location, 'must not be empty')
    return value


def _entry(raw, location):
    _expect(raw, dict, location)
    keys = set(raw)
    if keys == {'delegate'}:
        return projection(_name(raw['delegate'], f'{location}.delegate'))
    if keys == {'dnf'}:
        clauses = []
        for c, clause in enumerate(_expect(raw['dnf'], list, f'{location}.dnf')):
            literals = []
            for i, text in enumerate(_expect(clause, list, f'{location}.dnf[{c}]')):
                where = f'{location}.dnf[{c}][{i}]'
                try:
                    literals.append(Literal.parse(_expect(text, str, where)))
                except PreconditionError as ex:
                    raise ParseError(where, str(ex))
            clauses.append(literals)
        return canonicalize(clauses)
    raise ParseError(location, 'entry must have exactly one of "delegate" or "dnf"')


def _ballot(raw, location, alternatives):
    _expect(raw, dict, location)
    unknown = set(raw) - {'name', 'entries', 'backup'}
    if unknown:
        raise ParseError(location, f'unknown fields {", ".join(sorted(unknown))}')
    if 'name' not in raw:
        raise ParseError(location, 'missing "name"')
    if 'backup' not in raw:
        raise ParseError(location, 'missing "backup"')
    name = _name(raw['name'], f'{location}.name')
    backup = _name(raw['backup'], f'{location}.backup')
    if backup not in alternatives:
        raise ParseError(f'{location}.backup', f'{backup!r} is not one of {list(alternatives)}')
    entries = tuple(
        _entry(entry, f'{location}.entries[{i}]')
        for i, entry in enumerate(_expect(raw.get('entries', []), list, f'{location}.entries'))
    )
    return Ballot(name, entries, backup)


def from_data(data, source='<input>') -> Profile:
    _expect(data, dict, source)
    alternatives = tuple(
        _name(alt, f'alternatives[{i}]')
        for i, alt in enumerate(_expect(data.get('alternatives', list(BINARY)), list, 'alternatives'))
    )
    if 'agents' not in data:
        raise ParseError(source, 'missing "agents"')
    ballots = tuple(
        _ballot(raw, f'agents[{i}]', alternatives)
        for i, raw in enumerate(_expect(data['agents'], list, 'agents'))
    )
    try:
        return Profile(ballots, alternatives)
    except PreconditionError as ex:
        raise ParseError('agents', str(ex))


def loads(text, source='<input>') -> Profile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f'{source}:{ex.lineno}:{ex.colno}', ex.msg)
    profile = from_data(data, source)
    logger.debug('parsed %d ballots from %s', profile.n, source)
    return profile


def load(path) -> Profile:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as ex:
        raise ParseError(str(path), ex.strerror or str(ex))
    return loads(text, str(path))


def _entry_data(entry):
    if entry.is_projection:
        return {'delegate': next(iter(entry.support))}
    return {'dnf': entry.as_clause_lists()}


def to_data(profile: Profile) -> dict:
    return {
        'alternatives': list(profile.alternatives),
        'agents': [
            {
                'name': ballot.owner,
                'entries': [_entry_data(entry) for entry in ballot.entries],
                'backup': ballot.backup,
            }
            for ballot in profile.ballots
        ],
    }


def dumps(profile: Profile) -> str:
    return json.dumps(to_data(profile), indent=2, ensure_ascii=False) + '\n'


def dump(profile: Profile, path):
    Path(path).write_text(dumps(profile), encoding='utf-8')
