from drf_yasg.utils import swagger_auto_schema
from drf_yasg import openapi
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny

from . import views as runs_views

# ---------------------------------------------------------------------------
# Reusable response schemas
# ---------------------------------------------------------------------------
_err = openapi.Schema(
    type=openapi.TYPE_OBJECT,
    properties={
        "success": openapi.Schema(type=openapi.TYPE_BOOLEAN),
        "error": openapi.Schema(type=openapi.TYPE_STRING),
    },
)
_run_schema = openapi.Schema(
    type=openapi.TYPE_OBJECT,
    properties={
        "id": openapi.Schema(type=openapi.TYPE_INTEGER),
        "kind": openapi.Schema(type=openapi.TYPE_STRING, description="simulate | magflow | bps | vortex | higgsmass"),
        "status": openapi.Schema(type=openapi.TYPE_STRING, description="pending | running | completed | failed"),
        "seed": openapi.Schema(type=openapi.TYPE_INTEGER),
        "threads": openapi.Schema(type=openapi.TYPE_INTEGER),
        "output_dir": openapi.Schema(type=openapi.TYPE_STRING),
        "created_at": openapi.Schema(type=openapi.TYPE_STRING),
        "summary": openapi.Schema(type=openapi.TYPE_OBJECT),
        "error_class": openapi.Schema(type=openapi.TYPE_STRING),
        "error_message": openapi.Schema(type=openapi.TYPE_STRING),
        "exit_code": openapi.Schema(type=openapi.TYPE_INTEGER),
    },
)


# ---------------------------------------------------------------------------
# Runs
# ---------------------------------------------------------------------------

@swagger_auto_schema(
    method="get",
    tags=["Runs"],
    operation_summary="List runs",
    operation_description="Return every recorded run, newest first.",
    manual_parameters=[
        openapi.Parameter("kind", openapi.IN_QUERY, description="simulate | magflow | bps | vortex | higgsmass", type=openapi.TYPE_STRING, required=False),
        openapi.Parameter("status", openapi.IN_QUERY, description="pending | running | completed | failed", type=openapi.TYPE_STRING, required=False),
    ],
    responses={
        200: openapi.Schema(
            type=openapi.TYPE_OBJECT,
            properties={
                "success": openapi.Schema(type=openapi.TYPE_BOOLEAN),
                "runs": openapi.Schema(type=openapi.TYPE_ARRAY, items=_run_schema),
            },
        ),
    },
)
@api_view(["GET"])
@permission_classes([AllowAny])
def list_runs(request):
    return runs_views.list_runs(request._request)


@swagger_auto_schema(
    method="get",
    tags=["Runs"],
    operation_summary="Get run",
    operation_description="Return status, resolved parameters and manifest of a run.",
    responses={
        200: openapi.Schema(
            type=openapi.TYPE_OBJECT,
            properties={
                "success": openapi.Schema(type=openapi.TYPE_BOOLEAN),
                "run": _run_schema,
            },
        ),
        404: _err,
    },
)
@api_view(["GET"])
@permission_classes([AllowAny])
def run_detail(request, run_id):
    return runs_views.run_detail(request._request, run_id)


@swagger_auto_schema(
    method="get",
    tags=["Runs"],
    operation_summary="Download run manifest",
    operation_description="Download manifest.json with the digests of every output file.",
    responses={
        200: "JSON file download",
        400: _err,
        404: _err,
    },
)
@api_view(["GET"])
@permission_classes([AllowAny])
def download_manifest(request, run_id):
    return runs_views.download_manifest(request._request, run_id)
