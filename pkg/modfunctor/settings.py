"""
Django settings for the modfunctor project.

There is no database and no web surface: the project is driven entirely through
management commands (see conformal/management/commands).

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv
load_dotenv()


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("SECRET_KEY", "dev-only-secret")

DEBUG = os.environ.get("DEBUG", "False") == "True"


# Application definition

INSTALLED_APPS = [
    'conformal.apps.ConformalConfig',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [BASE_DIR / "templates"],
        'APP_DIRS': True,
        'OPTIONS': {
            'autoescape': False,
        },
    },
]

DATABASES = {}


# Numerics and enumeration limits

CONFORMAL = {
    "TOLERANCE": float(os.environ.get("CONFORMAL_TOLERANCE", "1e-9")),
    "ENUMERATION_CAP": int(os.environ.get("CONFORMAL_ENUMERATION_CAP", "64")),
    "RADICAL_CAPACITY": int(os.environ.get("CONFORMAL_RADICAL_CAPACITY", str(2 ** 16))),
    "AXIOM_CAPACITY": int(os.environ.get("CONFORMAL_AXIOM_CAPACITY", str(2 ** 12))),
    "QFORM_BRUTE_FORCE": int(os.environ.get("CONFORMAL_QFORM_BRUTE_FORCE", "256")),
    "MAX_GENUS": int(os.environ.get("CONFORMAL_MAX_GENUS", "5")),
    "JSON_PRECISION": int(os.environ.get("CONFORMAL_JSON_PRECISION", "12")),
}


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "conformal": {
            "handlers": ["console"],
            "level": os.environ.get("CONFORMAL_LOG_LEVEL", "WARNING"),
        },
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True
