from django.apps import AppConfig


class CharclassConfig(AppConfig):
    name = 'charclass'
    verbose_name = 'Characteristic classes'
