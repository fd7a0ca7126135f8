from django.apps import AppConfig


class Su2Config(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.su2'
    verbose_name = 'SU(2) Group Arithmetic'
