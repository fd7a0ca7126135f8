"""
Development settings.
Active when DJANGO_ENV is unset or set to "development".
Never use in production.
"""
from .base import *  # noqa: F401, F403

# ---------------------------------------------------------------------------
# Core
# ---------------------------------------------------------------------------
DEBUG = True
ALLOWED_HOSTS = ["*"]
