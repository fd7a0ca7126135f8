from django.apps import AppConfig


class TopohiggsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.topohiggs'
    verbose_name = 'Topological Higgs Mass'
