from django.urls import path
from . import api_views

app_name = "runs"

urlpatterns = [
    path('', api_views.list_runs, name='list_runs'),
    path('<int:run_id>/', api_views.run_detail, name='run_detail'),
    path('<int:run_id>/manifest/', api_views.download_manifest, name='download_manifest'),
]
