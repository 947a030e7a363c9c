import re

from django.template import Context, Template
from django.utils.safestring import mark_safe
from laces.components import Component

from ..enums import OutputFormat


def get_output_format(parent_context=None) -> OutputFormat:
    value = parent_context.get('format') if parent_context else None
    if isinstance(value, OutputFormat):
        return value
    return OutputFormat(value or OutputFormat.TEXT.value)


def clean_text(rendered):
    return '\n'.join(line.rstrip() for line in rendered.splitlines() if line.strip())


class TemplateStringComponent(Component):
    """
    A component rendered from a template string.  ``template`` is used for
    plain text, ``html_template`` for html; the format travels in the
    parent context under ``format``.
    """

    template: str = ''''''
    html_template: str = ''''''

    def get_template(self, output_format=OutputFormat.TEXT):
        return self.html_template if output_format.is_html else self.template

    def render_html(self, parent_context=None):
        output_format = get_output_format(parent_context)

        context_data = self.get_context_data(parent_context)
        context_data['format'] = output_format.value

        template = Template(self.get_template(output_format))
        rendered = template.render(Context(context_data, autoescape=output_format.is_html))

        if output_format.is_html:
            return mark_safe(re.sub(r'\s+', ' ', rendered).strip())
        return mark_safe(clean_text(rendered))

    def render(self, output_format=OutputFormat.TEXT):
        return self.render_html({'format': output_format})

