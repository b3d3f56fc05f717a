from django.apps import AppConfig


class SuperpositionConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.superposition"
