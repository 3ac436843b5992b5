DEFAULTS = {
    'R_MIN': 1e-3,
    'R_MAX': 1e3,
    'R_POINTS': 2001,
    'T_MIN': -10.0,
    'T_MAX': 10.0,
    'T_POINTS': 4001,
    'Y_PROBES': (0.1, 0.5, 1.0, 3.0, 7.0),
    'FD_STEP': 1e-3,
    'KINK_STEP': 1e-6,
    'CONVEXITY_TOL': 1e-7,
    'SYMMETRY_TOL': 1e-9,
    'LIPSCHITZ_WINDOWS': (10.0, 20.0, 40.0, 80.0),
    'LIPSCHITZ_STABLE': 0.05,
    'QUAD_ABS_TOL': 1e-10,
    'WORKERS': None,
    'FIT_TOL': 1e-8,
    'FIT_MAX_ITER': 10000,
    'CSV_DIGITS': 17,
}


def get_setting(key):
    """Value of RBLOSS[key] from Django settings, or the module default when Django is not configured."""
    try:
        from django.conf import settings
        if settings.configured:
            return getattr(settings, 'RBLOSS', {}).get(key, DEFAULTS[key])
    except ImportError:
        pass
    return DEFAULTS[key]
