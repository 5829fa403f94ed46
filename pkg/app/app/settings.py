"""
Django settings for the msr-codes project.

Every value can be overridden from the environment, so the management
commands are configured the same way in a shell, a container or CI.

For the full list of Django settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get("SECRET_KEY", "changeme")

DEBUG = bool(int(os.environ.get("DEBUG", 0)))

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "core",
    "msr",
]

# No models: the project keeps its state in parameter and shard files.
DATABASES = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Regenerating code settings

# Worker threads for exhaustive verification sweeps.
MSR_THREADS = int(os.environ.get("MSR_THREADS", 1))

# Largest sub-packetization a code may use.
MSR_MAX_ALPHA = int(os.environ.get("MSR_MAX_ALPHA", 1 << 20))

# Largest alpha for which dense generator and MDS matrices are built.
MSR_DENSE_ALPHA = int(os.environ.get("MSR_DENSE_ALPHA", 4096))

MSR_DEFAULT_SEED = int(os.environ.get("MSR_DEFAULT_SEED", 1))

MSR_MAX_TRIES = int(os.environ.get("MSR_MAX_TRIES", 64))


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "core": {
            "handlers": ["console"],
            "level": os.environ.get("MSR_LOG_LEVEL", "WARNING"),
        },
        "msr": {
            "handlers": ["console"],
            "level": os.environ.get("MSR_LOG_LEVEL", "WARNING"),
        },
    },
}
