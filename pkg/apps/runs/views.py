from django.shortcuts import get_object_or_404
from django.http import HttpResponse, JsonResponse
import json
import logging

from apps.errors import DualMeissnerError
from .manifest import load_manifest
from .models import SimulationRun


logger = logging.getLogger("dualmeissner.runs.views")


def health_check(request):
    """
    Simple health check endpoint for load balancer
    """
    return JsonResponse({"status": "ok"})


def _run_data(run):
    data = {
        "id": run.id,
        "kind": run.kind,
        "status": run.status,
        "seed": int(run.seed) if run.seed else None,
        "threads": run.threads,
        "output_dir": run.output_dir,
        "created_at": run.created_at.isoformat(),
        "updated_at": run.updated_at.isoformat(),
    }
    if run.completed_at:
        data["completed_at"] = run.completed_at.isoformat()
    if run.status == "completed":
        data["summary"] = run.summary
    if run.status == "failed":
        data["error_class"] = run.error_class
        data["error_message"] = run.error_message
        data["exit_code"] = run.exit_code
    return data


def list_runs(request):
    """
    List recorded runs, newest first; ``?kind=`` and ``?status=`` filter.
    """
    try:
        runs = SimulationRun.objects.all()
        kind = request.GET.get("kind")
        status = request.GET.get("status")
        if kind:
            runs = runs.filter(kind=kind)
        if status:
            runs = runs.filter(status=status)
        return JsonResponse({"success": True, "runs": [_run_data(run) for run in runs]})

    except Exception as e:
        logger.error(f"Error listing runs: {e}")
        return JsonResponse(
            {"success": False, "error": "An unexpected error occurred"}, status=500
        )


def run_detail(request, run_id):
    """
    Status, parameters and manifest of one run.
    """
    run = get_object_or_404(SimulationRun, id=run_id)
    data = _run_data(run)
    data["parameters"] = run.parameters
    data["config_file"] = run.config_file
    data["manifest"] = None
    if run.manifest_path:
        try:
            data["manifest"] = load_manifest(run.manifest_path).to_dict()
        except DualMeissnerError as e:
            logger.warning(f"⚠️ Run {run.id}: {e.message}")
            data["manifest_error"] = e.message
    return JsonResponse({"success": True, "run": data})


def download_manifest(request, run_id):
    """
    Download the run manifest as a JSON file.
    """
    run = get_object_or_404(SimulationRun, id=run_id)
    if not run.manifest_path:
        return JsonResponse(
            {"success": False, "error": "Run has no manifest yet"}, status=400
        )
    try:
        manifest = load_manifest(run.manifest_path)
    except DualMeissnerError as e:
        logger.error(f"Error loading manifest for run {run.id}: {e.message}")
        return JsonResponse({"success": False, "error": e.message}, status=404)

    response = HttpResponse(
        json.dumps(manifest.to_dict(), indent=2, sort_keys=True),
        content_type="application/json",
    )
    response["Content-Disposition"] = f'attachment; filename="{run.kind}_{run.id:05d}_manifest.json"'
    return response
