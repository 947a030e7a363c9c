import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from unravel import serializers
from unravel.ballots import Ballot, Profile
from unravel.exceptions import ParseError
from unravel.functions import parse

from .oracles import FIXTURES, fixture


def agents(*ballots, alternatives=('0', '1')):
    return {'alternatives': list(alternatives), 'agents': list(ballots)}


class LoadTests(SimpleTestCase):

    def test_example(self):
        profile = fixture('example1.json')
        self.assertEqual(profile.agents, tuple('abcdefg'))
        self.assertEqual(profile.ballot('g').entries, ())
        self.assertEqual(profile.entry('b', 0), parse([['!d']]))

    def test_delegate_and_dnf_entries_agree(self):
        data = agents(
            {'name': 'a', 'entries': [{'delegate': 'b'}, {'dnf': [['b']]}], 'backup': '1'},
            {'name': 'b', 'backup': '0'},
        )
        profile = serializers.from_data(data)
        self.assertEqual(profile.entry('a', 0), profile.entry('a', 1))
        self.assertEqual(profile.ballot('b').k, 0)

    def test_numeric_names(self):
        data = {'agents': [{'name': 1, 'entries': [], 'backup': 0}]}
        profile = serializers.from_data(data)
        self.assertEqual(profile.agents, ('1',))
        self.assertEqual(profile.ballot('1').backup, '0')

    def test_round_trip(self):
        for name in ('example1.json', 'p2.json', 'three_way.json'):
            with self.subTest(name=name):
                profile = fixture(name)
                self.assertEqual(serializers.loads(serializers.dumps(profile)), profile)

    def test_dump(self):
        profile = Profile((Ballot.classic('a', ['b'], '1'), Ballot('b', (), '0')))
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'profile.json'
            serializers.dump(profile, path)
            self.assertEqual(serializers.load(path), profile)
            data = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(data['agents'][0]['entries'], [{'delegate': 'b'}])


class ParseErrorTests(SimpleTestCase):

    def assertLocation(self, data, location):
        with self.assertRaises(ParseError) as caught:
            serializers.from_data(data)
        self.assertEqual(caught.exception.location, location)

    def test_empty_literal(self):
        data = agents({'name': 'a', 'entries': [{'delegate': 'b'}, {'dnf': [['!']]}], 'backup': '1'})
        self.assertLocation(data, 'agents[0].entries[1].dnf[0][0]')

    def test_bad_entry(self):
        data = agents({'name': 'a', 'entries': [{'delegate': 'b', 'dnf': []}], 'backup': '1'})
        self.assertLocation(data, 'agents[0].entries[0]')

    def test_backup_outside_alternatives(self):
        data = agents({'name': 'a', 'backup': '2'})
        self.assertLocation(data, 'agents[0].backup')

    def test_missing_fields(self):
        self.assertLocation(agents({'entries': [], 'backup': '1'}), 'agents[0]')
        self.assertLocation(agents({'name': 'a'}), 'agents[0]')
        self.assertLocation({'alternatives': ['0', '1']}, '<input>')

    def test_unknown_field(self):
        data = agents({'name': 'a', 'backup': '1', 'weight': 3})
        with self.assertRaises(ParseError) as caught:
            serializers.from_data(data)
        self.assertIn('weight', str(caught.exception))

    def test_duplicate_agents(self):
        data = agents({'name': 'a', 'backup': '1'}, {'name': 'a', 'backup': '0'})
        self.assertLocation(data, 'agents')

    def test_wrong_types(self):
        self.assertLocation(agents('a'), 'agents[0]')
        self.assertLocation(agents({'name': 'a', 'entries': {}, 'backup': '1'}), 'agents[0].entries')
        self.assertLocation(agents({'name': ' ', 'backup': '1'}), 'agents[0].name')

    def test_invalid_json(self):
        with self.assertRaises(ParseError) as caught:
            serializers.loads('{\n  "agents": [,]\n}', 'profile.json')
        self.assertEqual(str(caught.exception).split(':')[:3], ['profile.json', '2', '14'])

    def test_missing_file(self):
        with self.assertRaises(ParseError) as caught:
            serializers.load(FIXTURES / 'missing.json')
        self.assertTrue(caught.exception.location.endswith('missing.json'))
