from django.apps import AppConfig


class Gf2CoreConfig(AppConfig):
    name = 'gf2core'
    verbose_name = 'GF(2) linear algebra'
