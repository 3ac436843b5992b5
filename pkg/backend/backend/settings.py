import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'rbloss-development-key')

DEBUG = os.getenv("DEBUG", "False") == "True"

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'rest_framework',
    'rbloss',
]

# Commands only; nothing is persisted
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True


def _floats(value):
    return tuple(float(part) for part in value.split(','))


def _workers(value):
    return int(value) if value else os.cpu_count()


# Numerical settings of the rbloss app, overridable as RBLOSS_<KEY>
RBLOSS = {
    'R_MIN': float(os.getenv('RBLOSS_R_MIN', '1e-3')),
    'R_MAX': float(os.getenv('RBLOSS_R_MAX', '1e3')),
    'R_POINTS': int(os.getenv('RBLOSS_R_POINTS', '2001')),
    'T_MIN': float(os.getenv('RBLOSS_T_MIN', '-10')),
    'T_MAX': float(os.getenv('RBLOSS_T_MAX', '10')),
    'T_POINTS': int(os.getenv('RBLOSS_T_POINTS', '4001')),
    'Y_PROBES': _floats(os.getenv('RBLOSS_Y_PROBES', '0.1,0.5,1,3,7')),
    'FD_STEP': float(os.getenv('RBLOSS_FD_STEP', '1e-3')),
    'KINK_STEP': float(os.getenv('RBLOSS_KINK_STEP', '1e-6')),
    'CONVEXITY_TOL': float(os.getenv('RBLOSS_CONVEXITY_TOL', '1e-7')),
    'SYMMETRY_TOL': float(os.getenv('RBLOSS_SYMMETRY_TOL', '1e-9')),
    'LIPSCHITZ_WINDOWS': _floats(os.getenv('RBLOSS_LIPSCHITZ_WINDOWS', '10,20,40,80')),
    'LIPSCHITZ_STABLE': float(os.getenv('RBLOSS_LIPSCHITZ_STABLE', '0.05')),
    'QUAD_ABS_TOL': float(os.getenv('RBLOSS_QUAD_ABS_TOL', '1e-10')),
    'WORKERS': _workers(os.getenv('RBLOSS_WORKERS')),
    'FIT_TOL': float(os.getenv('RBLOSS_FIT_TOL', '1e-8')),
    'FIT_MAX_ITER': int(os.getenv('RBLOSS_FIT_MAX_ITER', '10000')),
    'CSV_DIGITS': int(os.getenv('RBLOSS_CSV_DIGITS', '17')),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'stream': 'ext://sys.stderr',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'rbloss': {
            'handlers': [],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'WARNING'),
            'propagate': True,
        },
    },
}
