from django.apps import AppConfig


class TwistConfig(AppConfig):
    name = 'twist'
    verbose_name = 'Twisted K-groups'
