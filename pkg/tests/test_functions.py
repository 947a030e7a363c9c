import itertools

from django.test import SimpleTestCase

from unravel.enums import FunctionClass, Target
from unravel.exceptions import PreconditionError, SupportTooLarge
from unravel.functions import (
    Literal,
    canonicalize,
    conjunction,
    constant,
    disjunction,
    extensionally_equal,
    find_binary_simulation,
    is_constant,
    majority,
    parse,
    partial_eval,
    projection,
)

from .oracles import seeded, truth_table


def random_clauses(rng, agents, monotone=False):
    return [
        [Literal(agent, not monotone and rng.random() < 0.3) for agent in rng.sample(agents, rng.randint(1, 3))]
        for _ in range(rng.randint(0, 4))
    ]


class CanonicalizeTests(SimpleTestCase):

    def test_absorption(self):
        self.assertEqual(canonicalize([['b', 'c'], ['b']]), canonicalize([['b']]))

    def test_constants(self):
        self.assertEqual(canonicalize([]).constant_value, 0)
        self.assertEqual(canonicalize([[]]).constant_value, 1)
        self.assertEqual(str(constant(1)), '1')
        self.assertEqual(str(constant(0)), '0')

    def test_majority_is_already_minimal(self):
        maj = canonicalize([['x', 'y'], ['y', 'z'], ['z', 'x']])
        self.assertEqual(len(maj.clauses), 3)
        self.assertEqual(maj, majority(['x', 'y', 'z']))

    def test_contradictory_clause_is_dropped(self):
        self.assertEqual(canonicalize([['d', '!d']]).constant_value, 0)
        self.assertEqual(canonicalize([['d', '!d'], ['c']]), projection('c'))

    def test_rendering(self):
        self.assertEqual(str(parse([['b'], ['c']])), 'b ∨ c')
        self.assertEqual(str(parse([['e', 'f'], ['g']])), '(e ∧ f) ∨ g')
        self.assertEqual(str(parse([['!d']])), '!d')
        self.assertEqual(parse([['c', 'b']]).as_clause_lists(), [['b', 'c']])

    def test_empty_literal_is_rejected(self):
        with self.assertRaises(PreconditionError):
            Literal.parse('!')

    def test_idempotent_and_faithful(self):
        rng = seeded(31)
        agents = ['p', 'q', 'r', 's', 't']
        for trial in range(300):
            raw = random_clauses(rng, agents)
            f = canonicalize(raw)
            with self.subTest(trial=trial, f=str(f)):
                self.assertEqual(canonicalize(f.clauses), f)
                self.assertEqual(truth_table(f.clauses, agents), truth_table(raw, agents))


class PartialEvalTests(SimpleTestCase):

    def test_disjunction_with_true_argument(self):
        self.assertEqual(partial_eval(disjunction(['b', 'c']), {'b': 1}).constant_value, 1)

    def test_disjunction_with_false_argument(self):
        reduced = partial_eval(disjunction(['b', 'c']), {'b': 0})
        self.assertEqual(reduced, projection('c'))
        self.assertIsNone(is_constant(reduced))

    def test_majority_with_one_true_argument(self):
        self.assertEqual(partial_eval(majority(['e', 'f', 'g']), {'g': 1}), disjunction(['e', 'f']))

    def test_evaluate_partial_agrees_with_partial_eval(self):
        rng = seeded(5)
        agents = ['p', 'q', 'r', 's']
        for trial in range(200):
            clauses = [
                [Literal(agent, rng.random() < 0.3) for agent in rng.sample(agents, rng.randint(1, 3))]
                for _ in range(rng.randint(1, 3))
            ]
            f = canonicalize(clauses)
            nu = {agent: rng.choice((0, 1, None)) for agent in agents}
            with self.subTest(trial=trial, f=str(f), nu=nu):
                self.assertEqual(f.evaluate_partial(nu), is_constant(partial_eval(f, nu)))

    def test_commutes_with_evaluation(self):
        rng = seeded(37)
        agents = [f'x{i}' for i in range(8)]
        for trial in range(150):
            f = canonicalize(random_clauses(rng, agents))
            nu = {agent: rng.choice((0, 1)) for agent in rng.sample(agents, rng.randint(0, len(agents)))}
            reduced = partial_eval(f, nu)
            free = [agent for agent in agents if agent not in nu]
            with self.subTest(trial=trial, f=str(f), nu=nu):
                self.assertFalse(reduced.support & set(nu))
                for bits in itertools.product((0, 1), repeat=len(free)):
                    total = dict(nu, **dict(zip(free, bits)))
                    self.assertEqual(reduced.evaluate(total), f.evaluate(total))


class ConstancyTests(SimpleTestCase):

    def test_structural_answers(self):
        self.assertEqual(is_constant(constant(1)), 1)
        self.assertIsNone(is_constant(disjunction(['x', 'y'])))

    def test_tautology_by_truth_table(self):
        tautology = parse([['d'], ['!d']])
        self.assertEqual(len(tautology.clauses), 2)
        self.assertEqual(is_constant(tautology), 1)

    def test_cap_on_non_monotone_support(self):
        wide = parse([['!x0']] + [[f'x{i}'] for i in range(1, 6)])
        with self.assertRaises(SupportTooLarge):
            is_constant(wide, cap=4)
        self.assertIsNone(is_constant(wide, cap=8))


class EqualityTests(SimpleTestCase):

    def test_commutativity(self):
        self.assertTrue(extensionally_equal(disjunction(['b', 'c']), disjunction(['c', 'b'])))

    def test_absorption_before_comparison(self):
        self.assertTrue(extensionally_equal(parse([['b']]), parse([['b', 'c'], ['b']])))

    def test_or_differs_from_and(self):
        self.assertFalse(extensionally_equal(disjunction(['b', 'c']), conjunction(['b', 'c'])))

    def test_non_monotone_forms(self):
        xor_a = parse([['x', '!y'], ['!x', 'y']])
        xor_b = parse([['!y', 'x'], ['y', '!x']])
        self.assertTrue(extensionally_equal(xor_a, xor_b))
        self.assertFalse(extensionally_equal(xor_a, disjunction(['x', 'y'])))

    def test_agrees_with_truth_table(self):
        rng = seeded(41)
        agents = ['p', 'q', 'r', 's']
        for trial in range(300):
            monotone = trial % 2 == 0
            f = canonicalize(random_clauses(rng, agents, monotone))
            g = canonicalize(random_clauses(rng, agents, monotone))
            if trial % 3 == 0 and f.clauses:
                clause = rng.choice(f.sorted_clauses)
                extra = rng.choice([agent for agent in agents if agent not in {lit.agent for lit in clause}] or agents)
                padded = list(clause) + [Literal(extra, not monotone and rng.random() < 0.5)]
                g = canonicalize(list(f.clauses) + [padded])
            table = truth_table(f.clauses, agents)
            with self.subTest(trial=trial, f=str(f), g=str(g)):
                self.assertEqual(extensionally_equal(f, g), table == truth_table(g.clauses, agents))
                expected = table[0] if len(set(table)) == 1 else None
                self.assertEqual(is_constant(f), expected)


class DualTests(SimpleTestCase):

    def test_dual_swaps_and_or(self):
        self.assertEqual(disjunction(['a', 'b']).dual(), conjunction(['a', 'b']))
        self.assertEqual(majority(['x', 'y', 'z']).dual(), majority(['x', 'y', 'z']))

    def test_dual_by_truth_table(self):
        f = parse([['a', 'b'], ['c']])
        dual = f.dual()
        for bits in itertools.product((0, 1), repeat=3):
            assignment = dict(zip('abc', bits))
            flipped = {agent: 1 - value for agent, value in assignment.items()}
            with self.subTest(bits=bits):
                self.assertEqual(dual.evaluate(assignment), 1 - f.evaluate(flipped))

    def test_dual_needs_monotone(self):
        with self.assertRaises(PreconditionError):
            parse([['!a']]).dual()


class ClassTests(SimpleTestCase):

    def test_single_function_classes(self):
        cases = [
            (projection('a'), FunctionClass.LIQUID),
            (disjunction(['a', 'b']), FunctionClass.OR2),
            (conjunction(['a', 'b']), FunctionClass.AND2),
            (disjunction(['a', 'b', 'c']), FunctionClass.OR),
            (conjunction(['a', 'b', 'c']), FunctionClass.AND),
            (majority(['a', 'b', 'c']), FunctionClass.MON),
            (parse([['!a']]), FunctionClass.BOOL),
        ]
        for f, expected in cases:
            with self.subTest(f=str(f)):
                self.assertEqual(f.function_class, expected)


class BinarySimulationTests(SimpleTestCase):

    def test_majority_simulates_and(self):
        self.assertEqual(find_binary_simulation(majority(['x', 'y', 'z']), Target.AND), ('x', 'y', {'z': 0}))

    def test_majority_simulates_or(self):
        self.assertEqual(find_binary_simulation(majority(['x', 'y', 'z']), Target.OR), ('x', 'y', {'z': 1}))

    def test_disjunction_cannot_simulate_and(self):
        self.assertIsNone(find_binary_simulation(disjunction(['x', 'y', 'z']), Target.AND))

    def test_simulation_is_exact(self):
        f = parse([['a', 'b', 'c'], ['c', 'd'], ['e']])
        for target, combine in ((Target.AND, conjunction), (Target.OR, disjunction)):
            found = find_binary_simulation(f, target)
            with self.subTest(target=target):
                self.assertIsNotNone(found)
                p, q, nu = found
                self.assertNotEqual(p, q)
                self.assertEqual(set(nu), f.support - {p, q})
                self.assertEqual(partial_eval(f, nu), combine([p, q]))

    def test_requires_monotone(self):
        with self.assertRaises(PreconditionError):
            find_binary_simulation(parse([['!x', 'y']]), Target.AND)
