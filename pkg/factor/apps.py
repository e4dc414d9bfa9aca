from django.apps import AppConfig


class FactorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'factor'
