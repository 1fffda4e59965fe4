"""
Django REST Framework serializers validating command options and shaping
JSON output
"""
from rest_framework import serializers

from atlas.services import CSV, EXHAUSTIVE, FORMATS, MODES
from gf2core.linalg import MAX_RANK
from reducer.serializers import TraceSerializer
from repmodel.parser import RepParseError, parse_rep
from twist.services import METHODS, ORACLE
from twist.twists import TwistParseError, parse_twist


class RepRequestSerializer(serializers.Serializer):
    """Rank plus representation expression; adds the parsed representation"""

    n = serializers.IntegerField(min_value=1, max_value=MAX_RANK)
    rep = serializers.CharField(allow_blank=True, trim_whitespace=False)

    def validate(self, attrs):
        try:
            attrs['representation'] = parse_rep(attrs['rep'], attrs['n'])
        except RepParseError as exc:
            raise serializers.ValidationError({'rep': str(exc)})
        return attrs


class ComputeRequestSerializer(RepRequestSerializer):
    twist = serializers.CharField(required=False, allow_null=True, allow_blank=True)
    method = serializers.ChoiceField(choices=METHODS, default=ORACLE)
    json = serializers.BooleanField(default=False)
    trace = serializers.BooleanField(default=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['trace'] and attrs['method'] == ORACLE:
            raise serializers.ValidationError("--trace needs --method reduce or both")
        try:
            attrs['parsed_twist'] = parse_twist(attrs.get('twist') or '', attrs['n'])
        except TwistParseError as exc:
            raise serializers.ValidationError({'twist': str(exc)})
        return attrs


class ComputeResultSerializer(serializers.Serializer):
    """JSON output of compute; the rep field echoes a re-parsable expression"""

    n = serializers.IntegerField()
    rep = serializers.CharField()
    twist = serializers.CharField(allow_null=True)
    chi = serializers.IntegerField()
    m = serializers.IntegerField()
    epsilon = serializers.IntegerField()
    method = serializers.CharField()
    trace = TraceSerializer(required=False)


class AtlasRequestSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1, max_value=MAX_RANK)
    mode = serializers.ChoiceField(choices=MODES, default=EXHAUSTIVE)
    samples = serializers.IntegerField(min_value=1, default=1000)
    seed = serializers.IntegerField(min_value=0, default=0)
    max_size = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    out = serializers.CharField(default='-')
    format = serializers.ChoiceField(choices=FORMATS, default=CSV)
    workers = serializers.IntegerField(min_value=1, default=1)
    no_orbits = serializers.BooleanField(default=False)


class VerifyRequestSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1, max_value=MAX_RANK)
    exhaustive = serializers.BooleanField(default=False)
    samples = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate(self, attrs):
        if attrs['exhaustive'] and (attrs.get('samples') is not None or attrs.get('seed') is not None):
            raise serializers.ValidationError("--exhaustive cannot be combined with --samples or --seed")
        return attrs


class SwRequestSerializer(RepRequestSerializer):
    json = serializers.BooleanField(default=False)


class SwResultSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    rep = serializers.CharField()
    w1 = serializers.CharField()
    w2 = serializers.CharField()
    w3 = serializers.CharField()
    beta_w2 = serializers.CharField()
    spinc = serializers.CharField()
    twist = serializers.CharField(allow_null=True)
