from django.contrib import admin
from django.urls import path, include
from apps.runs.views import health_check
from rest_framework import permissions
from drf_yasg.views import get_schema_view
from drf_yasg import openapi

# ---------------------------------------------------------------------------
# Public API schema (read-only run registry)
# ---------------------------------------------------------------------------
_public_patterns = [
    path("api/runs/", include("apps.runs.urls")),
]

schema_view = get_schema_view(
    openapi.Info(
        title="dualmeissner API",
        default_version="v1",
        description=(
            "Read-only view of the runs recorded by the **dualmeissner** laboratory.\n\n"
            "Runs are started from the command line (`manage.py simulate | magflow | bps | vortex | higgsmass`).\n\n"
            "| Group | Description |\n"
            "|-------|-------------|\n"
            "| **Runs** | Run status, resolved parameters, output manifests |\n"
        ),
    ),
    public=True,
    permission_classes=[permissions.AllowAny],
    patterns=_public_patterns,
)


urlpatterns = [
    path("admin/", admin.site.urls),
    path("healthz/", health_check, name="health_check"),  # Health check endpoint
    path("api/docs/", schema_view.with_ui("swagger", cache_timeout=0), name="swagger-ui"),
    path("api/redoc/", schema_view.with_ui("redoc", cache_timeout=0), name="redoc-ui"),
    path("api/swagger.json", schema_view.without_ui(cache_timeout=0), name="swagger-json"),
    path("api/runs/", include("apps.runs.urls")),
]
