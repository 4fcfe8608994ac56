from django.apps import AppConfig


class RcaConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'rca'
    verbose_name = 'Rational Cherednik algebras'
