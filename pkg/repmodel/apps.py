from django.apps import AppConfig


class RepmodelConfig(AppConfig):
    name = 'repmodel'
    verbose_name = 'Representations of (Z/2)^n'
