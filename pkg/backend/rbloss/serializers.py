import math

from rest_framework import serializers

SPEC_VERSION = '1'


class FiniteOrNullField(serializers.FloatField):
    """Floats that render non-finite values as null, so reports stay valid JSON"""

    def to_representation(self, value):
        if value is None:
            return None
        value = float(value)
        return value if math.isfinite(value) else None


class VerdictSerializer(serializers.Serializer):
    property = serializers.CharField()
    verdict = serializers.ChoiceField(choices=['holds', 'fails', 'inconclusive'])
    expected = serializers.BooleanField(allow_null=True)
    matches = serializers.BooleanField(read_only=True)
    witness = FiniteOrNullField(allow_null=True)
    witness_y = FiniteOrNullField(allow_null=True)
    witness_value = FiniteOrNullField(allow_null=True)
    grid_id = serializers.CharField(allow_blank=True)
    constant = FiniteOrNullField(allow_null=True)
    windows = serializers.ListField(child=serializers.FloatField())
    estimates = serializers.ListField(child=FiniteOrNullField(allow_null=True))
    note = serializers.CharField(allow_blank=True)


class PropertyReportSerializer(serializers.Serializer):
    subject = serializers.CharField()
    ell_id = serializers.CharField()
    number = serializers.IntegerField()
    link = serializers.CharField(allow_null=True)
    c = serializers.FloatField(allow_null=True)
    direction = serializers.CharField(allow_null=True)
    grids = serializers.DictField(child=serializers.CharField())
    verdicts = serializers.SerializerMethodField()
    mismatches = serializers.SerializerMethodField()

    def get_verdicts(self, obj):
        return [VerdictSerializer(v).data for v in obj.verdicts.values()]

    def get_mismatches(self, obj):
        return [v.property for v in obj.mismatches]


class ReportEnvelopeSerializer(serializers.Serializer):
    """Top-level wrapper of every JSON document the commands write"""
    spec_version = serializers.CharField(default=SPEC_VERSION)
    kind = serializers.CharField()
    mismatch_count = serializers.IntegerField(required=False)
    reports = PropertyReportSerializer(many=True, required=False)
    deviations = serializers.ListField(child=serializers.ListField(child=serializers.CharField()), required=False)


class LinearModelSerializer(serializers.Serializer):
    w = serializers.ListField(child=serializers.FloatField(), allow_empty=True)
    b0 = serializers.FloatField()

    def validate(self, data):
        values = list(data['w']) + [data['b0']]
        if not all(math.isfinite(v) for v in values):
            raise serializers.ValidationError('model entries must be finite')
        return data


class FitResultSerializer(serializers.Serializer):
    spec_version = serializers.SerializerMethodField()
    loss = serializers.SerializerMethodField()
    model = serializers.SerializerMethodField()
    converged = serializers.BooleanField()
    final_risk = FiniteOrNullField(allow_null=True)
    gradient_norm = FiniteOrNullField(allow_null=True)
    iterations = serializers.IntegerField()
    risk_trace = serializers.SerializerMethodField()

    def get_spec_version(self, obj):
        return SPEC_VERSION

    def get_loss(self, obj):
        return self.context.get('loss')

    def get_model(self, obj):
        return LinearModelSerializer(obj.model.as_dict()).data

    def get_risk_trace(self, obj):
        return [[iteration, risk] for iteration, risk in obj.risk_trace]
