"""
Command line front end.

Commands are methods of ``CommandSet`` marked with ``@command``; the parser
is built from the marked methods and ``dispatch`` routes to them.  Every
command returns a report and an exit code.
"""
import argparse
import logging
import random
import sys
from pathlib import Path

from .axioms import COUNTEREXAMPLES, RuleHandle, build_counterexample, check_cast_monotonicity
from .ballots import classify, validate
from .conf import configure
from .control import leximin, lifted, minmax_biased, minsum_biased, n_d_membership
from .enums import Bias, FunctionClass, Model, OutputFormat, Rule
from .exceptions import InconsistentCertificate, ParseError, ProfileError, UnravelError
from .functions import Literal
from .gadgets import (
    gen_minmax_inapprox,
    gen_minmax_orand2,
    gen_minsum_and2,
    gen_minsum_or2,
    gen_random_classic,
    gen_random_smart,
)
from .graph import arborescence_of, build_graph, min_bottleneck_arborescence, min_cost_arborescence
from .graph.delegation import Certificate
from .reports.report import (
    axiom_report,
    certificate_report,
    generated_report,
    unravel_report,
    validation_report,
)
from .serializers import dump, dumps, load
from .smart import brute, check_consistency, minmax_and, minmax_or, select
from .utils import parse_ranks

logger = logging.getLogger(__name__)

GENERATORS = (
    'minsum-or2', 'minsum-and2', 'minmax-orand2', 'minmax-inapprox',
    'random-classic', 'random-smart', 'counterexample',
)


def command(name=None, help=None, arguments=()):
    """
    Mark a method as a command.

    Args:
        name: command name on the command line (defaults to the method name, dashed)
        help: one line shown in ``--help``
        arguments: ``argument(...)`` specs added to the command's parser

    Example:
        @command(help='Validate a ballot file', arguments=[argument('path')])
        def validate(self, options):
            ...
    """
    def decorator(func):
        func.is_command = True
        func.command_name = name or func.__name__.rstrip('_').replace('_', '-')
        func.command_help = help or (func.__doc__ or '').strip().split('\n')[0]
        func.command_arguments = list(arguments)
        return func

    return decorator


def argument(*flags, **kwargs):
    return flags, kwargs


def parse_clauses(text):
    """``a-b,b-c`` into ``[('a', 'b'), ('b', 'c')]``."""
    clauses = []
    for part in filter(None, (p.strip() for p in text.split(','))):
        pair = tuple(v.strip() for v in part.split('-'))
        if len(pair) != 2 or not all(pair):
            raise ParseError('clauses', f'expected an edge like "a-b", got {part!r}')
        clauses.append(pair)
    return clauses


def parse_formula(text):
    """``x,y,z;!x,!y,!w`` into clauses of literals."""
    formula = []
    for part in filter(None, (p.strip() for p in text.split(';'))):
        try:
            formula.append([Literal.parse(lit) for lit in part.split(',')])
        except UnravelError as ex:
            raise ParseError('formula', str(ex))
    return formula


def unravel_classic(profile, rule: Rule, bias: Bias):
    graph = build_graph(profile)
    n_d = None
    if rule.is_minsum:
        tree = min_cost_arborescence(graph) if bias.is_none else minsum_biased(graph, bias.alternative).arborescence
        value = tree.cost
    elif rule.is_minmax:
        tree = min_bottleneck_arborescence(graph)[0] if bias.is_none else minmax_biased(graph, bias.alternative).arborescence
        value = tree.bottleneck
    else:
        tree = leximin(graph, bias).arborescence
        value = tree.certificate.sorted_desc
    if not bias.is_none:
        membership = n_d_membership(lifted(graph) if rule.is_leximin else graph, bias.alternative)
        n_d = membership.minmax if rule.is_minmax else membership.minsum
    return dict(
        certificate=tree.certificate, votes=tree.votes(), value=value, solver='arborescence',
        order=tree.order(), n_d=n_d,
    )


def unravel_smart(profile, rule: Rule, bias: Bias, budget=None):
    profile.require_binary()
    function_class = classify(profile)
    if rule.is_minmax and bias.is_none and function_class.within_or:
        result = minmax_or(profile)
    elif rule.is_minmax and bias.is_none and function_class.within_and:
        result = minmax_and(profile)
    else:
        result = brute(profile, rule, budget=budget)
    solution = select(result, profile, bias)
    n_d = None
    if not bias.is_none:
        n_d = frozenset(a for s in result.solutions for a, v in s.votes.items() if v == bias.alternative)
    return dict(
        certificate=solution.certificate, votes=solution.votes, value=result.value, solver=result.solver,
        order=solution.order, n_d=n_d, function_class=function_class,
        optimal_count=len(result.solutions) if result.solver == 'search' else None,
    )


def _common_options():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--format', dest='output_format', choices=[f.value for f in OutputFormat],
                        default=OutputFormat.TEXT.value)
    parser.add_argument('--out', help='write the output to PATH instead of stdout')
    parser.add_argument('--budget', type=int, help='certificates the exhaustive search may examine')
    parser.add_argument('-v', '--verbose', action='store_true')
    return parser


def _model_option():
    return argument('--model', choices=[m.value for m in Model], default=Model.CLASSIC.value)


def _seed_option(text):
    return argument('--seed', type=int, help=text)


class CommandSet:
    prog = 'unravel'
    description = 'Unravel liquid democracy ballots into concrete votes.'

    def __init__(self, stdout=None):
        self.stdout = stdout or sys.stdout

    def get_commands(self):
        """Return the methods marked with @command."""
        commands = []
        for attr_name in dir(self.__class__):
            attr = getattr(self.__class__, attr_name)
            if callable(attr) and hasattr(attr, 'is_command'):
                commands.append({
                    'method': getattr(self, attr_name),
                    'name': attr.command_name,
                    'help': attr.command_help,
                    'arguments': attr.command_arguments,
                })
        return sorted(commands, key=lambda info: info['name'])

    def get_parser(self):
        parser = argparse.ArgumentParser(prog=self.prog, description=self.description)
        subparsers = parser.add_subparsers(dest='command', required=True)
        common = _common_options()
        for info in self.get_commands():
            sub = subparsers.add_parser(info['name'], help=info['help'], parents=[common])
            for flags, kwargs in info['arguments']:
                sub.add_argument(*flags, **kwargs)
            sub.set_defaults(handler=info['method'])
        return parser

    def write(self, report, options):
        text = report.output(OutputFormat(options.output_format))
        if options.out and options.command != 'gen':
            Path(options.out).write_text(text + '\n', encoding='utf-8')
        else:
            self.stdout.write(text + '\n')

    def dispatch(self, argv=None):
        options = self.get_parser().parse_args(argv)
        configure(verbose=options.verbose)
        try:
            report, code = options.handler(options)
        except UnravelError as ex:
            logger.error('%s', ex)
            return ex.exit_code
        if report is not None:
            self.write(report, options)
        logger.info('%s finished with exit code %d', options.command, code)
        return code

    @command(help='Check a ballot file against a model', arguments=[argument('path'), _model_option()])
    def validate(self, options):
        profile = load(options.path)
        report = validate(profile, Model(options.model))
        return validation_report(profile, report, options.path), 0 if report.ok else 1

    @command(name='unravel', help='Compute concrete votes with an unravelling rule', arguments=[
        argument('path'),
        argument('--rule', choices=[r.value for r in Rule], default=Rule.MINSUM.value),
        argument('--bias', choices=[b.value for b in Bias], default=Bias.NONE.value),
        _model_option(),
    ])
    def unravel_(self, options):
        profile = load(options.path)
        model, rule, bias = Model(options.model), Rule(options.rule), Bias(options.bias)
        report = validate(profile, model)
        if not report.ok:
            raise ProfileError(report.violations)
        if model.is_classic:
            outcome = unravel_classic(profile, rule, bias)
        else:
            outcome = unravel_smart(profile, rule, bias, options.budget)
        handle = RuleHandle(rule, bias, model)
        logger.info('%s: objective %s by %s', handle, outcome['value'], outcome['solver'])
        return unravel_report(profile, rule=handle, model=model, bias=bias, **outcome), 0

    @command(name='check-cert', help='Check whether a certificate is consistent', arguments=[
        argument('path'),
        argument('certificate', help='comma-separated ranks in agent order'),
        _seed_option('seed for a random resolution order'),
    ])
    def check_cert(self, options):
        profile = load(options.path)
        certificate = Certificate.for_profile(profile, parse_ranks(options.certificate))
        if profile.is_binary:
            rng = random.Random(options.seed) if options.seed is not None else None
            result = check_consistency(profile, certificate, rng=rng)
            consistent, votes, order, stuck = result.consistent, result.votes, result.order, result.stuck
        else:
            try:
                tree = arborescence_of(build_graph(profile), certificate)
                consistent, votes, order, stuck = True, tree.votes(), tree.order(), ()
            except InconsistentCertificate as ex:
                consistent, votes, order, stuck = False, {}, (), ex.agents
        report = certificate_report(
            profile, certificate, consistent=consistent, votes=votes, order=order, stuck=stuck,
            total=certificate.total, bottleneck=certificate.bottleneck,
        )
        return report, 0 if consistent else 1

    @command(help='Generate a gadget, random or counterexample profile', arguments=[
        argument('kind', choices=GENERATORS),
        argument('--clauses', help='graph edges for cover gadgets, e.g. "a-b,b-c"'),
        argument('--cover', type=int, default=1, help='vertex cover size K'),
        argument('--multiplier', type=int, default=1),
        argument('--formula', help='3-literal clauses, e.g. "x,y,z;!x,!y,!w"'),
        argument('--gap', type=int, default=1, help='ladder copies k for minmax-inapprox'),
        argument('--agents', type=int, default=5, help='number of agents'),
        argument('--max-ballot', type=int, default=2),
        argument('--function-class', choices=[c.value for c in FunctionClass], default=FunctionClass.MON.value),
        argument('--name', choices=COUNTEREXAMPLES, default=COUNTEREXAMPLES[0]),
        _seed_option('seed for the random generators'),
        argument('--inverted', action='store_true'),
    ])
    def gen(self, options):
        kind = options.kind
        extra = {}
        if kind in ('minsum-or2', 'minsum-and2'):
            if not options.clauses:
                raise ParseError('clauses', 'required for cover gadgets')
            factory = gen_minsum_or2 if kind == 'minsum-or2' else gen_minsum_and2
            profile = factory(parse_clauses(options.clauses), options.cover, options.multiplier)
        elif kind in ('minmax-orand2', 'minmax-inapprox'):
            if not options.formula:
                raise ParseError('formula', 'required for 3SAT gadgets')
            formula = parse_formula(options.formula)
            if kind == 'minmax-orand2':
                profile = gen_minmax_orand2(formula)
            else:
                profile = gen_minmax_inapprox(formula, options.gap)
        elif kind == 'random-classic':
            profile = gen_random_classic(options.agents, options.max_ballot, seed=options.seed)
        elif kind == 'random-smart':
            profile = gen_random_smart(options.agents, options.max_ballot, FunctionClass(options.function_class),
                                       seed=options.seed)
        else:
            profile, agent, d = build_counterexample(options.name, options.agents, options.inverted)
            extra = {'agent': agent, 'alternative': d}

        if not options.out:
            self.stdout.write(dumps(profile))
            return None, 0
        dump(profile, options.out)
        logger.info('wrote %d ballots to %s', profile.n, options.out)
        return generated_report(profile, kind, options.out, extra), 0

    @command(name='axiom-check', help='Check cast monotonicity for one agent and alternative', arguments=[
        argument('path', nargs='?'),
        argument('--counterexample', choices=COUNTEREXAMPLES, help='use a built-in instance instead of a file'),
        argument('--agents', type=int, default=5, help='size of the built-in MinMax instance'),
        argument('--inverted', action='store_true'),
        argument('--agent'),
        argument('--alt', default=None),
        argument('--rule', default='minsum', help='e.g. minmax, minsum-biased-1, minsum-brute'),
    ])
    def axiom_check(self, options):
        if options.counterexample:
            profile, agent, d = build_counterexample(options.counterexample, options.agents, options.inverted)
        elif options.path:
            profile, agent, d = load(options.path), None, None
        else:
            raise ParseError('path', 'give a ballot file or --counterexample')
        agent = options.agent or agent
        d = options.alt or d
        if agent is None or d is None:
            raise ParseError('arguments', '--agent and --alt are required for ballot files')
        handle = RuleHandle.parse(options.rule)
        report = check_cast_monotonicity(profile, agent, d, handle, budget=options.budget)
        logger.info('cast monotonicity of %s: %s', handle, 'holds' if report.holds else 'violated')
        return axiom_report(report), 0


def main(argv=None):
    return CommandSet().dispatch(argv)
