from django.apps import AppConfig


class ConformalConfig(AppConfig):
    name = 'conformal'
    verbose_name = "Conformal blocks"

    def ready(self):
        from . import checks  # noqa: F401
