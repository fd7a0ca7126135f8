from django.apps import AppConfig


class DualglConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.dualgl'
    verbose_name = 'Dual Ginzburg-Landau Vortices'
