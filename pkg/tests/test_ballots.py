from django.test import SimpleTestCase

from unravel.ballots import Ballot, Profile, classify, validate
from unravel.enums import FunctionClass, Model
from unravel.exceptions import DomainError, PreconditionError
from unravel.functions import conjunction, disjunction, projection

from .oracles import fixture


class BallotTests(SimpleTestCase):

    def test_entry_falls_back_to_backup(self):
        ballot = Ballot('a', (disjunction(['b', 'c']), projection('b')), '0')
        self.assertEqual(ballot.k, 2)
        self.assertEqual(ballot.entry(2).constant_value, 0)
        self.assertEqual(ballot.describe(0), 'b ∨ c')
        self.assertEqual(str(ballot), 'b ∨ c ≻ b ≻ 0')
        with self.assertRaises(PreconditionError):
            ballot.entry(3)

    def test_direct_ballot(self):
        ballot = Ballot('g', (), '1')
        self.assertTrue(ballot.is_direct)
        self.assertEqual(ballot.entry(0).constant_value, 1)


class ProfileTests(SimpleTestCase):

    def test_duplicate_agents_are_rejected(self):
        with self.assertRaises(PreconditionError):
            Profile((Ballot('a', (), '0'), Ballot('a', (), '1')))

    def test_sizes(self):
        profile = fixture('example1.json')
        self.assertEqual(profile.n, 7)
        self.assertEqual(profile.ell, 2)
        self.assertEqual(profile.m, 7 + 11)
        self.assertEqual(profile.agents, tuple('abcdefg'))

    def test_with_direct_vote(self):
        profile = fixture('p2.json').with_direct_vote('a', '0')
        self.assertTrue(profile.ballot('a').is_direct)
        self.assertEqual(profile.ballot('a').backup, '0')
        self.assertEqual(profile.ballot('b'), fixture('p2.json').ballot('b'))

    def test_dual(self):
        profile = Profile((
            Ballot('a', (conjunction(['b', 'c']),), '0'),
            Ballot('b', (), '1'),
            Ballot('c', (), '0'),
        ))
        dual = profile.dual()
        self.assertEqual(dual.ballot('a').entries, (disjunction(['b', 'c']),))
        self.assertEqual([ballot.backup for ballot in dual.ballots], ['1', '0', '1'])

    def test_dual_needs_binary_alternatives(self):
        with self.assertRaises(DomainError):
            fixture('three_way.json').dual()


class ValidateTests(SimpleTestCase):

    def test_example_profile_is_a_valid_smart_profile(self):
        report = validate(fixture('example1.json'), Model.SMART)
        self.assertTrue(report.ok, report.violations)

    def test_example_profile_is_not_classic(self):
        report = validate(fixture('example1.json'), Model.CLASSIC)
        self.assertEqual(report.kinds(), {'non-projection'})

    def test_classic_profiles_pass_in_both_models(self):
        for model in Model:
            with self.subTest(model=model):
                self.assertTrue(validate(fixture('p2.json'), model).ok)

    def test_commuted_entries_are_duplicates(self):
        profile = Profile((
            Ballot('a', (disjunction(['b', 'c']), disjunction(['c', 'b'])), '0'),
            Ballot('b', (), '0'),
            Ballot('c', (), '1'),
        ))
        report = validate(profile, Model.SMART)
        self.assertEqual(report.kinds(), {'duplicate-entry'})
        self.assertEqual(report.violations[0].detail, 'entries 0 and 1')

    def test_every_violation_is_collected(self):
        report = validate(fixture('broken.json'), Model.SMART)
        self.assertFalse(report.ok)
        self.assertEqual(report.kinds(), {'self-reference', 'duplicate-entry', 'unknown-agent'})
        self.assertIn('ghost', str(report.violations[-1]))

    def test_constant_entries(self):
        profile = Profile((
            Ballot('a', (disjunction(['b', 'c']), conjunction([])), '0'),
            Ballot('b', (), '0'),
            Ballot('c', (), '1'),
        ))
        self.assertIn('constant-entry', validate(profile, Model.SMART).kinds())

    def test_smart_model_needs_binary_alternatives(self):
        report = validate(fixture('three_way.json'), Model.SMART)
        self.assertIn('non-binary', report.kinds())
        self.assertTrue(validate(fixture('three_way.json'), Model.CLASSIC).ok)


class ClassifyTests(SimpleTestCase):

    def test_liquid(self):
        self.assertEqual(classify(fixture('p2.json')), FunctionClass.LIQUID)

    def test_gadget_entry_is_or2(self):
        profile = Profile((
            Ballot('a', (disjunction(['x', 'b']),), '0'),
            Ballot('b', (projection('a'),), '0'),
            Ballot('x', (), '1'),
        ))
        self.assertEqual(classify(profile), FunctionClass.OR2)

    def test_mixed_binary_gadgets(self):
        profile = Profile((
            Ballot('a', (disjunction(['x', 'b']),), '0'),
            Ballot('b', (conjunction(['x', 'a']),), '0'),
            Ballot('x', (), '1'),
        ))
        self.assertEqual(classify(profile), FunctionClass.ORAND2)

    def test_negation_makes_bool(self):
        self.assertEqual(classify(fixture('example1.json')), FunctionClass.BOOL)
