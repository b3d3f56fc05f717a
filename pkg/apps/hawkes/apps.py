from django.apps import AppConfig


class HawkesConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.hawkes"
