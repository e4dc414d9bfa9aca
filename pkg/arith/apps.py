from django.apps import AppConfig


class ArithConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'arith'
