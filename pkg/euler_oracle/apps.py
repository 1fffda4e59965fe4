from django.apps import AppConfig


class EulerOracleConfig(AppConfig):
    name = 'euler_oracle'
    verbose_name = 'Euler characteristic oracle'
