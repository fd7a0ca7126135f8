from django.apps import AppConfig


class LatticeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.lattice'
    verbose_name = 'SU(2) Lattice Monte Carlo'
