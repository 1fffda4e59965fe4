"""
Django REST Framework serializers for atlas rows
"""
from rest_framework import serializers

from reducer.serializers import HexField


class AtlasRowSerializer(serializers.Serializer):
    """JSON mirror of one CSV row"""

    n = serializers.IntegerField()
    S = serializers.ListField(child=HexField())
    chi = serializers.IntegerField()
    m = serializers.IntegerField(min_value=0)
    epsilon = serializers.IntegerField(min_value=0, max_value=1)
    orbit = serializers.ListField(child=HexField(), allow_null=True)
    trace_toggle_count = serializers.IntegerField(allow_null=True)
    flags = serializers.ListField(child=serializers.CharField())
