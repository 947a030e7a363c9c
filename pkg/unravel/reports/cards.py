import dataclasses
from typing import Any

from .base import TemplateStringComponent
from .columns import format_cell


@dataclasses.dataclass
class Metric(TemplateStringComponent):
    label: str
    value: Any = ''

    template = '''{{ label }}: {{ value }}'''

    html_template = '''
    <div class="card rounded">
        <div class="card-body">
            <p class="text-uppercase fw-medium text-muted mb-0">{{ label }}</p>
            <h4 class="fs-22 fw-semibold mb-0">{{ value }}</h4>
        </div>
    </div>
    '''

    def get_context_data(self, parent_context=None):
        value = '-' if self.value is None or self.value == '' else format_cell(self.value)
        return {'label': self.label, 'value': value}
