import django
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


DEFAULTS = {
    'SUPPORT_CAP': 20,
    'BRUTE_BUDGET': 1_000_000,
    'FIXED_POINT_CAP': 20,
    'ENUMERATION_CAP': 8,
}

PREFIX = 'UNRAVEL_'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        'unravel': {'handlers': ['stderr'], 'level': 'WARNING', 'propagate': False},
    },
}


def get_setting(name, override=None):
    """
    Return ``UNRAVEL_<name>`` from Django settings, falling back to DEFAULTS.
    An explicit override wins over both.
    """
    if override is not None:
        return override
    try:
        return getattr(settings, PREFIX + name, DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]


def configure(verbose=False, **overrides):
    if settings.configured:
        return
    logging_config = {**LOGGING, 'loggers': {
        'unravel': {**LOGGING['loggers']['unravel'], 'level': 'DEBUG' if verbose else 'INFO'},
    }}
    settings.configure(
        INSTALLED_APPS=['laces'],
        TEMPLATES=[{
            'BACKEND': 'django.template.backends.django.DjangoTemplates',
            'APP_DIRS': True,
            'OPTIONS': {'context_processors': []},
        }],
        LOGGING=logging_config,
        **{PREFIX + key: value for key, value in overrides.items()},
    )
    django.setup()
