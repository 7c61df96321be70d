from marshmallow import Schema, fields, validate, post_load, validates_schema, ValidationError, EXCLUDE

from rangesieve.models.crowd import CrowdConfig, Distribution, EffectModel, DISTRIBUTION_KINDS


class DistributionSchema(Schema):
    kind = fields.String(required=True, validate=validate.OneOf(DISTRIBUTION_KINDS))
    params = fields.List(fields.Float(allow_nan=False), required=True)

    @validates_schema
    def validate_params(self, data, **kwargs):
        expected = 1 if data['kind'] == 'constant' else 2
        if len(data['params']) != expected:
            raise ValidationError("'{}' takes {} parameter(s)".format(data['kind'], expected), 'params')

    @post_load
    def make_distribution(self, data, **kwargs):
        return Distribution(kind=data['kind'], params=tuple(data['params']))


class CrowdConfigSchema(Schema):
    class Meta:
        unknown = EXCLUDE
        ordered = True

    seed = fields.Integer(validate=validate.Range(min=0))
    n_instances = fields.Integer(validate=validate.Range(min=1))
    n_annotators = fields.Integer(validate=validate.Range(min=2))
    width = fields.Nested(DistributionSchema)
    dispersion = fields.Nested(DistributionSchema)
    bias_spread = fields.Float(validate=validate.Range(min=0))
    noise = fields.Float(validate=validate.Range(min=0))
    width_jitter = fields.Float(validate=validate.Range(min=0))
    center_margin = fields.Float(validate=validate.Range(min=0, max=0.5))
    n_groups = fields.Integer(validate=validate.Range(min=1))

    @post_load
    def make_config(self, data, **kwargs):
        return CrowdConfig(**data)


class EffectModelSchema(Schema):
    class Meta:
        unknown = EXCLUDE
        ordered = True

    context_width_factor = fields.Float(validate=validate.Range(min=0, max=1, min_inclusive=False))
    context_dispersion_factor = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    deliberation_dispersion_factor = fields.Float(validate=validate.Range(min=0, max=1, min_inclusive=False))
    deliberation_width_factor = fields.Float(validate=validate.Range(min=0, min_inclusive=False))

    @post_load
    def make_effects(self, data, **kwargs):
        return EffectModel(**data)


class SynthConfigSchema(Schema):
    """Config file accepted by `synth` and `iterate`: crowd fields plus an optional `effects` block"""
    class Meta:
        unknown = EXCLUDE

    crowd = fields.Nested(CrowdConfigSchema, load_default=None)
    effects = fields.Nested(EffectModelSchema, load_default=None)
