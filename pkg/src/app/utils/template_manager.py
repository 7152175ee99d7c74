from pathlib import Path

from jinja2 import Environment

from app.utils.enums import TemplateName
from app.utils.logging import logger

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / 'templates'


class TemplateManager:
    _instance = None
    _template_cache = {}

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, template_dir: Path = TEMPLATE_DIR):
        if len(self._template_cache) == 0:
            self._template_dir = template_dir
            self._load_templates()

    def get_template(self, template_name: TemplateName, render: bool = False, **kwargs) -> str:
        template_text = self._template_cache.get(template_name.value, '')
        if not render:
            return template_text
        template_env = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
        template = template_env.from_string(template_text)
        return template.render(**kwargs)

    def render_template(self, template_name: TemplateName, **kwargs) -> str:
        return self.get_template(template_name, render=True, **kwargs)

    def _load_templates(self):
        for name in TemplateName:
            path = self._template_dir / name.value
            if not path.exists():
                logger.warning({'message': 'template missing', 'template': name.value})
                continue
            self._template_cache[name.value] = path.read_text(encoding='utf-8')
