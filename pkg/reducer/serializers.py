"""
Django REST Framework serializers for the JSON form of reduction traces
"""
from rest_framework import serializers

from euler_oracle.results import KResult
from gf2core.linalg import MAX_RANK
from repmodel.representations import CanonicalRep
from .hypergraph import BASE_CASES, MOVE_TYPES, BaseCase
from .trace import Trace, build_move


class HexField(serializers.Field):
    """Character or mask written as a hex string without prefix"""

    default_error_messages = {
        'invalid': 'Expected a hex string, got {value!r}.',
    }

    def to_representation(self, value):
        return f"{value:x}"

    def to_internal_value(self, data):
        try:
            value = int(str(data), 16)
        except ValueError:
            self.fail('invalid', value=data)
        if value < 0:
            self.fail('invalid', value=data)
        return value


class KResultSerializer(serializers.Serializer):
    m = serializers.IntegerField(min_value=0)
    epsilon = serializers.IntegerField(min_value=0, max_value=1)


class MoveSerializer(serializers.Serializer):
    """One move; base cases also carry pattern, m and epsilon"""

    kind = serializers.ChoiceField(choices=sorted(MOVE_TYPES))
    operands = serializers.ListField(child=HexField(), allow_empty=True)
    pattern = serializers.ChoiceField(choices=sorted(BASE_CASES), required=False)
    m = serializers.IntegerField(min_value=0, required=False)
    epsilon = serializers.IntegerField(min_value=0, max_value=1, required=False)
    chi = serializers.IntegerField(required=False, allow_null=True)

    def validate(self, attrs):
        extra = {}
        if attrs['kind'] == BaseCase.kind:
            missing = [name for name in ('pattern', 'm', 'epsilon') if name not in attrs]
            if missing:
                raise serializers.ValidationError(f"Base case needs {', '.join(missing)}")
            extra = {'pattern': attrs['pattern'], 'm': str(attrs['m']), 'eps': str(attrs['epsilon'])}
        try:
            attrs['move'] = build_move(attrs['kind'], attrs['operands'], extra)
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs


class TraceSerializer(serializers.Serializer):
    """Trace <-> JSON; ``save()`` returns a Trace"""

    n = serializers.IntegerField(min_value=0, max_value=MAX_RANK)
    sign = serializers.ChoiceField(choices=[1, -1])
    S = serializers.ListField(child=HexField(), allow_empty=True)
    moves = MoveSerializer(many=True)
    result = KResultSerializer()

    def to_representation(self, trace):
        hexed = HexField()
        moves = []
        for index, move in enumerate(trace.moves):
            data = {
                'kind': move.kind,
                'operands': [hexed.to_representation(v) for v in move.operands],
            }
            if isinstance(move, BaseCase):
                data.update(pattern=move.pattern, m=move.m, epsilon=move.epsilon)
            chi = trace.checkpoint(index)
            if chi is not None:
                data['chi'] = chi
            moves.append(data)
        return {
            'n': trace.initial.n,
            'sign': trace.initial.sign,
            'S': [hexed.to_representation(chi) for chi in trace.initial.characters],
            'moves': moves,
            'result': KResultSerializer(trace.result).data,
        }

    def validate(self, attrs):
        try:
            attrs['initial'] = CanonicalRep(attrs['n'], frozenset(attrs['S']), attrs['sign'])
        except ValueError as exc:
            raise serializers.ValidationError({'S': str(exc)})
        return attrs

    def create(self, validated_data):
        moves = validated_data['moves']
        checkpoints = tuple(move.get('chi') for move in moves)
        if all(chi is None for chi in checkpoints):
            checkpoints = ()
        result = validated_data['result']
        return Trace(
            validated_data['initial'],
            tuple(move['move'] for move in moves),
            KResult(result['m'], result['epsilon']),
            checkpoints,
        )
