"""
Django settings for the eklab project.

eklab has no web surface: the apps below are used through management
commands (``python manage.py <command>``) and as a plain library.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""
import os

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Nothing is served or signed, the key only satisfies Django's startup checks
SECRET_KEY = os.environ.get('EKLAB_SECRET_KEY', 'eklab-offline-no-secret')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.humanize', # intcomma in the report summary

    # eklab apps
    'core',
    'factor',
    'arith',
    'model',
    'sample',
    'census',
    'stats',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True, # core/templates/core/histogram.gp
        'OPTIONS': {
            'context_processors': [],
        },
    },
]


# No database: results are written to filesystem bundles only
DATABASES = {}

TEST_RUNNER = 'core.test_runner.EklabTestRunner'


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# intcomma in the report summary groups by thousands
NUMBER_GROUPING = 3

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# --- Logging ---
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('EKLAB_LOG_LEVEL', 'WARNING'),
    },
}


# --- eklab tunables ---
# Library functions read their defaults from here when a parameter is omitted.
EKLAB = {
    'SEGMENT_SIZE': int(os.environ.get('EKLAB_SEGMENT_SIZE', 2 ** 20)),
    # sieving below hi needs the primes up to sqrt(hi); above this the sieve refuses
    'BASE_PRIME_LIMIT': 10 ** 8,
    'TRIAL_DIVISION_BOUND': 1000,

    # floors for log_3 x and log_4 x, see model.window
    'L3_FLOOR': 1.5,
    'L4_FLOOR': 3.0,
    'MIN_DEFAULT_X': 10 ** 6,

    'K_MAX_LIMIT': 8,
    'PHI_SHIFT_LIMIT': 10 ** 4,

    # exact census runs are guarded by these caps
    'DCOUNT_X_CAP': 10 ** 7,
    'HYPOTHESES_X_CAP': 10 ** 7,
    'PROGRESSION_T_CAP': 10 ** 8,
    'D_PRODUCT_CAP': 10 ** 6,
    'D_LIST_CAP': 5000,
    'DEFAULT_K': 2,

    'HIST_BINS': 40,
    'HIST_RANGE': (-4.0, 4.0),
    'MODEL_CHUNK': 2 ** 22, # Bernoulli draws per chunk in sample_model

    'REPORT_PRESETS': (10 ** 5, 10 ** 6, 10 ** 7),
    'REPORT_FUNCTIONS': ('s', 'beta', 'cototient', 'n+tau'),
}
