from django.apps import AppConfig


class MsrConfig(AppConfig):
    name = 'msr'
    verbose_name = 'Regenerating code construction and repair'
