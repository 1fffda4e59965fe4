"""
Django settings for the ksphere project.

The project has no web surface and no database tables; Django provides the
management-command CLI, settings, logging configuration and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from decouple import config

SECRET_KEY = config('SECRET_KEY', default='django-insecure-ksphere-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)


# Application definition

INSTALLED_APPS = [
    # Third party apps
    'rest_framework',

    # Local apps
    'gf2core',
    'repmodel',
    'euler_oracle',
    'reducer',
    'charclass',
    'twist',
    'atlas',
    'cli',
]

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in (
            'gf2core', 'repmodel', 'euler_oracle', 'reducer',
            'charclass', 'twist', 'atlas', 'cli',
        )
    },
}


# Calculator configuration

# Per-move oracle checkpoints inside the reducer (slow path).
KSPHERE_DEBUG_CHI = config('KSPHERE_DEBUG_CHI', default=False, cast=bool)

# Size guards
KSPHERE_EXHAUSTIVE_MAX_N = config('KSPHERE_EXHAUSTIVE_MAX_N', default=4, cast=int)
KSPHERE_SAMPLE_MAX_N = config('KSPHERE_SAMPLE_MAX_N', default=8, cast=int)
KSPHERE_ORBIT_MAX_N = config('KSPHERE_ORBIT_MAX_N', default=4, cast=int)
KSPHERE_ORDER_CAP = config('KSPHERE_ORDER_CAP', default=8, cast=int)
