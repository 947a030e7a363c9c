"""
Reports shown by the command line: a title, a few metrics, per-agent tables
and free notes.  ``as_dict`` carries the same facts for ``--format json``.
"""
import dataclasses
import enum
import json
from typing import Any, Dict, List, Optional

from django.core.serializers.json import DjangoJSONEncoder

from ..enums import OutputFormat
from .base import TemplateStringComponent
from .cards import Metric
from .columns import Column
from .table import ReportTable


class ReportEncoder(DjangoJSONEncoder):
    def default(self, o):
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if isinstance(o, enum.Enum):
            return o.value
        return super().default(o)


@dataclasses.dataclass
class Report(TemplateStringComponent):
    title: str
    metrics: List[Metric] = dataclasses.field(default_factory=list)
    tables: List[ReportTable] = dataclasses.field(default_factory=list)
    notes: List[str] = dataclasses.field(default_factory=list)
    data: Dict[str, Any] = dataclasses.field(default_factory=dict)

    template = '''
{% load laces %}
{{ title }}
{% for metric in metrics %}{% component metric %}
{% endfor %}{% for table in tables %}{% component table %}
{% endfor %}{% for note in notes %}{{ note }}
{% endfor %}
'''

    html_template = '''
    {% load laces %}
    <section class="report">
        <h2>{{ title }}</h2>
        <div class="row">
            {% for metric in metrics %}
                <div class="col-xl-3 col-md-6">{% component metric %}</div>
            {% endfor %}
        </div>
        {% for table in tables %}{% component table %}{% endfor %}
        {% for note in notes %}<p class="text-muted">{{ note }}</p>{% endfor %}
    </section>
    '''

    def get_context_data(self, parent_context=None):
        return {
            'title': self.title,
            'metrics': self.metrics,
            'tables': self.tables,
            'notes': self.notes,
        }

    def as_dict(self):
        return {'title': self.title, **self.data}

    def to_json(self):
        return json.dumps(self.as_dict(), cls=ReportEncoder, indent=2, ensure_ascii=False)

    def output(self, output_format: OutputFormat) -> str:
        if output_format.is_json:
            return self.to_json()
        return str(self.render(output_format))


def _agent_rows(profile, certificate=None, votes=None):
    rows = []
    for i, ballot in enumerate(profile.ballots):
        row = {'agent': ballot.owner, 'ballot': str(ballot)}
        if certificate is not None and i < len(certificate.ranks):
            rank = certificate.ranks[i]
            row['rank'] = rank
            row['entry'] = ballot.describe(rank) if rank <= ballot.k else '?'
        if votes is not None:
            row['vote'] = votes.get(ballot.owner, '⊥')
        rows.append(row)
    return rows


AGENT_COLUMNS = [
    Column('agent'),
    Column('rank', align='right'),
    Column('entry', header='Selected entry'),
    Column('vote'),
]


def validation_report(profile, report, source='') -> Report:
    violations = [
        {'agent': v.agent, 'kind': v.kind, 'detail': v.detail} for v in report.violations
    ]
    tables = []
    if violations:
        tables.append(ReportTable(violations, [Column('agent'), Column('kind'), Column('detail')], title='Violations'))
    return Report(
        title=f'Validation {"passed" if report.ok else "failed"}{" for " + source if source else ""}',
        metrics=[
            Metric('Model', report.model.value),
            Metric('Agents', profile.n),
            Metric('Alternatives', list(profile.alternatives)),
            Metric('Longest ballot', profile.ell),
        ],
        tables=tables,
        data={
            'ok': report.ok,
            'model': report.model,
            'agents': profile.n,
            'violations': violations,
        },
    )


def unravel_report(profile, *, rule, model, bias, certificate, votes, value, solver,
                   order=None, n_d=None, function_class=None, optimal_count=None) -> Report:
    metrics = [
        Metric('Rule', rule),
        Metric('Model', model.value),
        Metric('Solver', solver),
        Metric('Objective', value),
        Metric('Certificate', certificate.ranks),
        Metric('Votes', profile.vote_vector(votes) if profile.is_binary else [votes[a] for a in profile.agents]),
    ]
    if function_class is not None:
        metrics.append(Metric('Function class', function_class.value))
    if optimal_count is not None:
        metrics.append(Metric('Optimal certificates', optimal_count))
    notes = []
    if order:
        notes.append('Resolution order: ' + ' ⊴ '.join(order))
    if n_d is not None:
        notes.append(f'N_{bias.value} (agents voting {bias.value} in some optimum): ' + (', '.join(sorted(n_d)) or '-'))
    return Report(
        title=f'Unravelling by {rule}',
        metrics=metrics,
        tables=[ReportTable(_agent_rows(profile, certificate, votes), AGENT_COLUMNS, title='Agents')],
        notes=notes,
        data={
            'rule': str(rule),
            'model': model,
            'bias': bias,
            'solver': solver,
            'objective': value,
            'certificate': certificate.as_dict(profile.agents),
            'entries': {row['agent']: row['entry'] for row in _agent_rows(profile, certificate)},
            'votes': votes,
            'order': list(order) if order else None,
            'n_d': sorted(n_d) if n_d is not None else None,
            'function_class': function_class,
            'optimal_count': optimal_count,
        },
    )


def certificate_report(profile, certificate, *, consistent, votes, order=(), stuck=(), total=None,
                       bottleneck=None) -> Report:
    notes = []
    if order:
        notes.append('Resolution order: ' + ' ⊴ '.join(order))
    if stuck:
        notes.append('Unresolved: ' + ', '.join(sorted(stuck)))
    return Report(
        title=f'Certificate {certificate} is {"consistent" if consistent else "inconsistent"}',
        metrics=[
            Metric('Consistent', consistent),
            Metric('Sum', total),
            Metric('Max', bottleneck),
        ],
        tables=[ReportTable(_agent_rows(profile, certificate, votes), AGENT_COLUMNS)],
        notes=notes,
        data={
            'consistent': consistent,
            'certificate': certificate.as_dict(profile.agents),
            'sum': total,
            'max': bottleneck,
            'votes': votes,
            'order': list(order),
            'stuck': sorted(stuck),
        },
    )


def _vectors(vectors):
    return [{'votes': vector} for vector in sorted(vectors)]


def axiom_report(report) -> Report:
    metrics = [
        Metric('Rule', str(report.handle)),
        Metric('Agent', report.agent),
        Metric('Switched to', report.alternative),
        Metric('Holds', report.holds),
    ]
    notes = []
    if not report.holds:
        metrics.append(Metric('Failed conditions', [c.value for c in report.failed]))
        notes.append(f'Witness {report.direction.value}: {",".join(map(str, report.witness))}')
        notes.append(f'Aggregation: {report.agg}')
        notes.append(f'Winners before: {sorted(report.winners_before)}, after: {sorted(report.winners_after)}')
    vector_columns = [Column('votes', header=','.join(report.agents))]
    return Report(
        title=f'Cast monotonicity of {report.handle} {"holds" if report.holds else "is violated"}',
        metrics=metrics,
        tables=[
            ReportTable(_vectors(report.before), vector_columns, title='Optimal votes before'),
            ReportTable(_vectors(report.after), vector_columns, title='Optimal votes after'),
        ],
        notes=notes,
        data={
            'rule': str(report.handle),
            'agent': report.agent,
            'alternative': report.alternative,
            'holds': report.holds,
            'agents': list(report.agents),
            'before': sorted(report.before),
            'after': sorted(report.after),
            'failed': [c.value for c in report.failed],
            'witness': report.witness,
            'direction': report.direction.value if report.direction else None,
            'agg': str(report.agg) if report.agg is not None else None,
            'winners_before': sorted(report.winners_before),
            'winners_after': sorted(report.winners_after),
        },
    )


def generated_report(profile, kind, path: Optional[str] = None, extra=None) -> Report:
    extra = extra or {}
    return Report(
        title=f'Generated {kind}' + (f' into {path}' if path else ''),
        metrics=[
            Metric('Agents', profile.n),
            Metric('Delegation options', profile.m - profile.n),
            Metric('Longest ballot', profile.ell),
        ] + [Metric(key.replace('_', ' ').capitalize(), value) for key, value in extra.items()],
        data={'kind': kind, 'path': path, 'agents': profile.n, 'longest_ballot': profile.ell, **extra},
    )
