from django.apps import AppConfig


class MonopolesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.monopoles'
    verbose_name = 'Abelian Projection and Monopoles'
