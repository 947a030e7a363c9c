import dataclasses

from django.utils.html import format_html
from laces.components import Component

from ..utils import format_vector


def format_cell(value) -> str:
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (tuple, list)):
        return format_vector(value)
    if isinstance(value, (set, frozenset)):
        return format_vector(sorted(value))
    return str(value)


@dataclasses.dataclass(frozen=False)
class Column(Component):
    name: str
    header: str = None
    key: str = None
    align: str = "left"

    td_str = '''<td class="text-{align}">{value}</td>'''

    def __post_init__(self):
        self.header = self.header or self.name.replace('_', ' ').replace('-', ' ').title()
        self.key = self.key or self.name

    def get_value(self, row):
        keys = self.key.split('.')
        value = row

        for key in keys:
            if isinstance(value, dict):
                value = value.get(key)
            elif hasattr(value, key):
                value = getattr(value, key)
            else:
                return ""

            if value is None:
                return ""

        return value

    def format_value(self, value) -> str:
        return format_cell(value)

    def get_text(self, row) -> str:
        return self.format_value(self.get_value(row))

    def get_row(self, context=None):
        return context.get("row") if context else None

    def render_html(self, parent_context=None):
        row = self.get_row(parent_context)
        return format_html(self.td_str, align=self.align, value=self.get_text(row))

