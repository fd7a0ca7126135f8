from django.apps import AppConfig


class BpsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.bps'
    verbose_name = 'BPS Monopole Evaluator'
