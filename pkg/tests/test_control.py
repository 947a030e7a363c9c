from django.test import SimpleTestCase

from unravel.axioms import build_counterexample
from unravel.ballots import Ballot, Profile
from unravel.control import leximin, lifted, minmax_biased, minsum_biased, n_d_membership
from unravel.enums import Bias
from unravel.exceptions import DomainError
from unravel.gadgets import gen_random_classic
from unravel.graph import DelegationGraph, build_graph

from .oracles import classic_optima, consistent_classic, fixture, seeded, vector


class MinMaxBiasedTests(SimpleTestCase):

    def setUp(self):
        profile, _, _ = build_counterexample('minmax-cast', 5)
        self.profile = profile
        self.graph = build_graph(profile)

    def test_favouring_one(self):
        outcome = minmax_biased(self.graph, '1')
        self.assertEqual(vector(self.profile, outcome.votes), (1, 1, 0, 1, 1))
        self.assertEqual(outcome.arborescence.bottleneck, 1)

    def test_favouring_zero(self):
        outcome = minmax_biased(self.graph, '0')
        self.assertEqual(vector(self.profile, outcome.votes), (1, 1, 0, 0, 0))

    def test_mutual_delegation(self):
        graph = build_graph(fixture('p2.json'))
        self.assertEqual(minmax_biased(graph, '1').votes, {'a': '1', 'b': '1'})
        self.assertEqual(minmax_biased(graph, '0').votes, {'a': '0', 'b': '0'})

    def test_needs_two_alternatives(self):
        with self.assertRaises(DomainError):
            minmax_biased(build_graph(fixture('three_way.json')), 'x')


class MinSumBiasedTests(SimpleTestCase):

    def test_mutual_delegation(self):
        graph = build_graph(fixture('p2.json'))
        outcome = minsum_biased(graph, '1')
        self.assertEqual(outcome.votes, {'a': '1', 'b': '1'})
        self.assertEqual(outcome.arborescence.describe(), ['a→r[1]', 'b→a'])
        self.assertEqual(minsum_biased(graph, '0').votes, {'a': '0', 'b': '0'})

    def test_unique_optimum_after_direct_vote(self):
        profile = Profile((
            Ballot('a', (), '1'),
            Ballot.classic('b', ['zero'], '1'),
            Ballot.classic('c', ['a', 'd'], '1'),
            Ballot.classic('d', ['a', 'c'], '1'),
            Ballot.classic('e', ['b'], '1'),
            Ballot.classic('f', ['b'], '1'),
            Ballot('zero', (), '0'),
        ))
        graph = build_graph(profile)
        for d in '01':
            with self.subTest(d=d):
                self.assertEqual(vector(profile, minsum_biased(graph, d).votes), (1, 0, 1, 1, 0, 0, 0))

    def test_needs_two_alternatives(self):
        with self.assertRaises(DomainError):
            minsum_biased(build_graph(fixture('three_way.json')), 'y')


class MembershipTests(SimpleTestCase):

    def test_mutual_delegation(self):
        membership = n_d_membership(build_graph(fixture('p2.json')), '1')
        self.assertEqual(membership.minsum, {'a', 'b'})
        self.assertEqual(membership.minmax, {'a', 'b'})

    def test_minmax_counterexample(self):
        profile, _, _ = build_counterexample('minmax-cast', 5)
        membership = n_d_membership(build_graph(profile), '1')
        self.assertEqual(membership.minmax, {'a', "a'", 'u1', 'u2'})
        self.assertEqual(membership.minsum, {'a', "a'"})

    def test_nobody_votes_one(self):
        profile = Profile((Ballot('a', (), '0'), Ballot.classic('b', ['a'], '0')))
        membership = n_d_membership(build_graph(profile), '1')
        self.assertEqual(membership.minsum, frozenset())
        self.assertEqual(membership.minmax, frozenset())


class LexiMinTests(SimpleTestCase):

    def test_mutual_delegation(self):
        graph = build_graph(fixture('p2.json'))
        outcome = leximin(graph)
        self.assertEqual(outcome.arborescence.certificate.sorted_desc, (1, 0))
        self.assertEqual(leximin(graph, Bias.ONE).votes, {'a': '1', 'b': '1'})
        self.assertEqual(leximin(graph, Bias.ZERO).votes, {'a': '0', 'b': '0'})

    def test_prefers_spread_ranks(self):
        graph = DelegationGraph.from_edges(['a', 'b', 'c'], [
            ('a', 'b', 0, None),
            ('a', None, 2, '1'),
            ('b', 'c', 0, None),
            ('b', None, 1, '0'),
            ('c', 'a', 0, None),
            ('c', None, 1, '0'),
        ])
        self.assertEqual(lifted(graph).edges[1].weight, 25)
        certificate = leximin(graph).arborescence.certificate
        self.assertEqual(certificate.sorted_desc, (1, 0, 0))
        self.assertIn(certificate.ranks, {(0, 1, 0), (0, 0, 1)})

    def test_matches_enumeration(self):
        rng = seeded(17)
        for trial in range(100):
            profile = gen_random_classic(rng.randint(1, 6), 3, seed=rng.randrange(10 ** 6))
            best, _ = classic_optima(profile, lambda ranks: tuple(sorted(ranks, reverse=True)))
            with self.subTest(trial=trial, profile=str(profile)):
                self.assertEqual(leximin(build_graph(profile)).arborescence.certificate.sorted_desc, best)


class SandwichTests(SimpleTestCase):
    """Biased outputs bound every optimum and realise the membership sets."""

    def test_random_profiles(self):
        rng = seeded(7)
        for trial in range(300):
            profile = gen_random_classic(rng.randint(1, 7), rng.randint(1, 2), seed=rng.randrange(10 ** 6))
            graph = build_graph(profile)
            consistent = consistent_classic(profile)
            for name, objective, biased, field in (
                ('minsum', sum, minsum_biased, 'minsum'),
                ('minmax', lambda ranks: max(ranks, default=0), minmax_biased, 'minmax'),
            ):
                best, optima = classic_optima(profile, objective, consistent)
                vectors = {vector(profile, votes) for _, votes in optima}
                low = biased(graph, '0')
                high = biased(graph, '1')
                with self.subTest(trial=trial, rule=name, profile=str(profile)):
                    self.assertEqual(objective(low.arborescence.certificate.ranks), best)
                    self.assertEqual(objective(high.arborescence.certificate.ranks), best)
                    lower, upper = vector(profile, low.votes), vector(profile, high.votes)
                    self.assertIn(lower, vectors)
                    self.assertIn(upper, vectors)
                    for votes in vectors:
                        self.assertTrue(all(x <= y <= z for x, y, z in zip(lower, votes, upper)))
                    for d in '01':
                        expected = {
                            agent for _, votes in optima for agent, value in votes.items() if value == d
                        }
                        self.assertEqual(getattr(n_d_membership(graph, d), field), expected)
