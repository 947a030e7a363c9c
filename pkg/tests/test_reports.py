import json

from django.test import SimpleTestCase

from unravel.ballots import validate
from unravel.enums import Model, OutputFormat
from unravel.reports.cards import Metric
from unravel.reports.columns import Column, format_cell
from unravel.reports.report import Report, validation_report
from unravel.reports.table import ReportTable

from .oracles import fixture

ROWS = [{'agent': 'a', 'vote': '1', 'rank': 2}, {'agent': 'bb', 'vote': '0'}]


class ColumnTests(SimpleTestCase):

    def test_header(self):
        self.assertEqual(Column('agent').header, 'Agent')
        self.assertEqual(Column('optimal_count').header, 'Optimal Count')
        self.assertEqual(Column('rank', header='#').header, '#')

    def test_nested_key(self):
        column = Column('size', key='graph.agents')
        self.assertEqual(column.get_value({'graph': {'agents': 3}}), 3)
        self.assertEqual(column.get_value({'graph': None}), '')
        self.assertEqual(column.get_value({}), '')

    def test_format_cell(self):
        self.assertEqual(format_cell(True), 'yes')
        self.assertEqual(format_cell((0, 1, 1)), '0,1,1')
        self.assertEqual(format_cell(frozenset({'b', 'a'})), 'a,b')
        self.assertEqual(format_cell(3), '3')

    def test_cell_html(self):
        html = Column('rank', align='right').render_html({'row': ROWS[0]})
        self.assertEqual(html, '<td class="text-right">2</td>')


class MetricTests(SimpleTestCase):

    def test_text(self):
        self.assertEqual(Metric('Votes', (0, 1)).render(), 'Votes: 0,1')
        self.assertEqual(Metric('Max', None).render(), 'Max: -')
        self.assertEqual(Metric('Consistent', False).render(), 'Consistent: no')

    def test_html(self):
        html = Metric('Agents', 7).render(OutputFormat.HTML)
        self.assertIn('<h4 class="fs-22 fw-semibold mb-0">7</h4>', html)
        self.assertIn('>Agents</p>', html)

    def test_html_is_escaped(self):
        html = Metric('Entry', '<b>').render(OutputFormat.HTML)
        self.assertIn('&lt;b&gt;', html)


class ReportTableTests(SimpleTestCase):

    def setUp(self):
        self.table = ReportTable(ROWS, [Column('agent'), Column('vote')], title='Agents')

    def test_text(self):
        self.assertEqual(self.table.render(), 'Agents\n  Agent  Vote\n  a      1\n  bb     0')

    def test_numbered(self):
        self.table.numbered = True
        self.assertEqual(self.table.get_lines()[1], '1  a      1   ')

    def test_html(self):
        html = self.table.render(OutputFormat.HTML)
        self.assertIn('<h3>Agents</h3>', html)
        self.assertIn('<th class="text-left">Vote</th>', html)
        self.assertIn('<td class="text-left">bb</td>', html)

    def test_as_rows(self):
        self.assertEqual(self.table.as_rows(), [{'agent': 'a', 'vote': '1'}, {'agent': 'bb', 'vote': '0'}])

    def test_columns_required(self):
        with self.assertRaises(ValueError):
            ReportTable(ROWS, []).render()


class ReportTests(SimpleTestCase):

    def setUp(self):
        self.report = Report(
            title='Unravelling by minsum',
            metrics=[Metric('Objective', 2)],
            tables=[ReportTable(ROWS, [Column('agent'), Column('vote')])],
            notes=['Resolution order: g ⊴ a'],
            data={'objective': 2, 'model': Model.SMART, 'n_d': frozenset({'b', 'a'})},
        )

    def test_text(self):
        lines = self.report.output(OutputFormat.TEXT).splitlines()
        self.assertEqual(lines[0], 'Unravelling by minsum')
        self.assertEqual(lines[1], 'Objective: 2')
        self.assertIn('  Agent  Vote', lines)
        self.assertEqual(lines[-1], 'Resolution order: g ⊴ a')

    def test_html(self):
        html = self.report.output(OutputFormat.HTML)
        self.assertTrue(html.startswith('<section class="report">'))
        self.assertIn('<h2>Unravelling by minsum</h2>', html)
        self.assertIn('<div class="col-xl-3 col-md-6"><div class="card rounded">', html)
        self.assertIn('<td class="text-left">a</td>', html)

    def test_json(self):
        data = json.loads(self.report.output(OutputFormat.JSON))
        self.assertEqual(data, {
            'title': 'Unravelling by minsum',
            'objective': 2,
            'model': 'smart',
            'n_d': ['a', 'b'],
        })

    def test_validation_report(self):
        profile = fixture('broken.json')
        report = validation_report(profile, validate(profile, Model.SMART), 'broken.json')
        self.assertEqual(report.title, 'Validation failed for broken.json')
        self.assertFalse(report.as_dict()['ok'])
        self.assertEqual(report.tables[0].title, 'Violations')
        self.assertIn('Violations', report.output(OutputFormat.TEXT))
