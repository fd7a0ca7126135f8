"""
Production settings.
Active when DJANGO_ENV=production.

Required environment variables:
  DJANGO_SECRET_KEY     : strong random key
  DATABASE_URL          : PostgreSQL connection string for the run registry
  DJANGO_ALLOWED_HOSTS  : comma-separated hostnames serving the read-only runs API
"""
import os
from .base import *  # noqa: F401, F403

from django.core.exceptions import ImproperlyConfigured

# ---------------------------------------------------------------------------
# Core
# ---------------------------------------------------------------------------
DEBUG = False

if not os.getenv("DATABASE_URL"):
    raise ImproperlyConfigured("DATABASE_URL must be set in production")

DATABASES["default"]["OPTIONS"] = {"sslmode": "require"}  # noqa: F405

ALLOWED_HOSTS = [
    h.strip()
    for h in os.getenv("DJANGO_ALLOWED_HOSTS", "localhost").split(",")
    if h.strip()
]

# ---------------------------------------------------------------------------
# Security headers
# ---------------------------------------------------------------------------
SECURE_CONTENT_TYPE_NOSNIFF = True
X_FRAME_OPTIONS = "DENY"
SESSION_COOKIE_SECURE = True
CSRF_COOKIE_SECURE = True
SECURE_HSTS_SECONDS = 31536000
SECURE_HSTS_INCLUDE_SUBDOMAINS = True
