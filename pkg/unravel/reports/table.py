import dataclasses
from typing import Any, List, Optional

from .base import TemplateStringComponent, get_output_format
from .columns import Column


@dataclasses.dataclass(frozen=False)
class ReportTable(TemplateStringComponent):
    rows: List[Any]
    columns: List[Column]
    title: Optional[str] = None
    numbered: bool = False
    class_names = 'table table-striped align-middle'

    template = '''
{% if title %}{{ title }}{% endif %}
{% for line in lines %}  {{ line }}
{% endfor %}
'''

    html_template = '''
        {% load laces %}
        {% if title %}<h3>{{ title }}</h3>{% endif %}
        <table class="{{ class_names }}">
            <thead>
            <tr>
                {% if numbered %}<th class="text-left">#</th>{% endif %}
                {% for col in columns %}
                    <th class="text-{{ col.align|default:'left' }}">{{ col.header }}</th>
                {% endfor %}
            </tr>
            </thead>
            <tbody>
            {% for row in rows %}
                <tr>
                    {% if numbered %}<td>{{ forloop.counter }}</td>{% endif %}
                    {% for column in columns %}
                        {% component column with row=row %}
                    {% endfor %}
                </tr>
            {% endfor %}
            </tbody>
        </table>
    '''

    def get_columns(self):
        if not self.columns:
            raise ValueError("Columns are required")
        return self.columns

    def get_lines(self):
        columns = self.get_columns()
        header = [col.header for col in columns]
        body = [[col.get_text(row) for col in columns] for row in self.rows]
        if self.numbered:
            header = ['#'] + header
            body = [[str(i)] + cells for i, cells in enumerate(body, start=1)]
        widths = [max(len(cells[i]) for cells in [header] + body) for i in range(len(header))]
        return ['  '.join(cell.ljust(width) for cell, width in zip(cells, widths)) for cells in [header] + body]

    def get_context_data(self, parent_context=None):
        context = {
            "title": self.title,
            "columns": self.get_columns(),
            "rows": self.rows,
            "numbered": self.numbered,
            "class_names": self.class_names,
        }
        if not get_output_format(parent_context).is_html:
            context["lines"] = self.get_lines()
        return context

    def as_rows(self):
        return [{col.name: col.get_value(row) for col in self.get_columns()} for row in self.rows]
