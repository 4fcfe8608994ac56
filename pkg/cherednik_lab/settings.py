import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent


def _env_int(name, default):
    try:
        return int(os.getenv(name, str(default)))
    except Exception:
        return default


def _env_float(name, default):
    try:
        return float(os.getenv(name, str(default)))
    except Exception:
        return default


def _env_bool(name, default):
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() not in ('0', 'false', 'no', '')


SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'replace-this-with-your-secret-key')
DEBUG = _env_bool('DJANGO_DEBUG', True)
ALLOWED_HOSTS = [h for h in os.getenv('DJANGO_ALLOWED_HOSTS', '').split(',') if h]

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rca.apps.RcaConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'cherednik_lab.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'cherednik_lab.wsgi.application'

# Only the job ledger lives in the database
if os.getenv('RCA_DB_ENGINE', 'sqlite').lower() == 'postgresql':
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.getenv('RCA_DB_NAME', 'cherednik_db'),
            'USER': os.getenv('RCA_DB_USER', 'cherednik_user'),
            'PASSWORD': os.getenv('RCA_DB_PASSWORD', 'cherednik_pass'),
            'HOST': os.getenv('RCA_DB_HOST', 'db'),
            'PORT': _env_int('RCA_DB_PORT', 5432),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }

AUTH_PASSWORD_VALIDATORS = []
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

STATIC_URL = '/static/'

# Computation defaults; every one can be overridden per job on the command line
RCA_DEFAULT_TOL = _env_float('RCA_DEFAULT_TOL', 1e-10)
RCA_DEFAULT_PRECISION = _env_int('RCA_DEFAULT_PRECISION', 64)
RCA_CERTIFICATION_MARGIN = _env_int('RCA_CERTIFICATION_MARGIN', 2)
RCA_TRUNCATION_SLACK = _env_int('RCA_TRUNCATION_SLACK', 4)
RCA_CHARACTER_DEGREE = _env_int('RCA_CHARACTER_DEGREE', 8)
RCA_MAX_WORKERS = _env_int('RCA_MAX_WORKERS', 4)
RCA_OUTPUT_DIGITS = _env_int('RCA_OUTPUT_DIGITS', 12)
RCA_CHECK_BOUND = _env_float('RCA_CHECK_BOUND', 1e-6)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '[%(asctime)s] %(levelname)s %(name)s: %(message)s'
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
        'level': os.getenv('RCA_LOG_LEVEL', 'INFO'),
    },
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Job views sit behind the admin login
LOGIN_URL = '/admin/login/'
