from marshmallow import Schema, fields, validate, validates_schema, ValidationError, EXCLUDE

from rangesieve import settings
from rangesieve.schemas.crowd_schema import CrowdConfigSchema, EffectModelSchema

_fraction = validate.Range(min=0, max=1)


class DatasetRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    dataset = fields.Dict(required=True)
    condition = fields.String(load_default=settings.CONDITION_BASELINE)


class BootstrapRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    seed = fields.Integer(required=True, validate=validate.Range(min=0))
    reps = fields.Integer(load_default=settings.BOOTSTRAP_REPLICATES, validate=validate.Range(min=1))
    level = fields.Float(load_default=settings.CONFIDENCE_LEVEL,
                         validate=validate.Range(min=0, max=1, min_inclusive=False, max_inclusive=False))


class SieveRequestSchema(DatasetRequestSchema):
    fraction = fields.Float(load_default=settings.DEFAULT_FRACTION, validate=_fraction)
    disagreement_fraction = fields.Float(allow_none=True, load_default=None, validate=_fraction)


class SimulateRequestSchema(SieveRequestSchema, BootstrapRequestSchema):
    pass


class UniformRequestSchema(DatasetRequestSchema, BootstrapRequestSchema):
    condition = fields.String(required=True)


class SweepRequestSchema(DatasetRequestSchema, BootstrapRequestSchema):
    fractions = fields.List(fields.Float(validate=_fraction), load_default=lambda: list(settings.SWEEP_FRACTIONS),
                            validate=validate.Length(min=1))
    disagreement_fractions = fields.List(fields.Float(validate=_fraction), allow_none=True, load_default=None)

    @validates_schema
    def validate_lengths(self, data, **kwargs):
        if data['disagreement_fractions'] is not None and \
                len(data['disagreement_fractions']) != len(data['fractions']):
            raise ValidationError("Needs one entry per fraction", 'disagreement_fractions')


class SliceRequestSchema(DatasetRequestSchema, BootstrapRequestSchema):
    slice_fraction = fields.Float(load_default=settings.SLICE_FRACTION, validate=_fraction)
    perm_reps = fields.Integer(load_default=settings.PERMUTATION_REPLICATES, validate=validate.Range(min=1))


class CompareRequestSchema(SimulateRequestSchema):
    perm_reps = fields.Integer(load_default=settings.PERMUTATION_REPLICATES, validate=validate.Range(min=1))


class SynthRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    seed = fields.Integer(required=True, validate=validate.Range(min=0))
    crowd = fields.Nested(CrowdConfigSchema, allow_none=True, load_default=None)
    effects = fields.Nested(EffectModelSchema, allow_none=True, load_default=None)


class IterateRequestSchema(SynthRequestSchema):
    fraction = fields.Float(load_default=settings.DEFAULT_FRACTION, validate=_fraction)
    disagreement_fraction = fields.Float(allow_none=True, load_default=None, validate=_fraction)
    rounds = fields.Integer(required=True, validate=validate.Range(min=1))
    tolerance = fields.Float(allow_none=True, load_default=None)
    reps = fields.Integer(load_default=settings.BOOTSTRAP_REPLICATES, validate=validate.Range(min=1))
    level = fields.Float(load_default=settings.CONFIDENCE_LEVEL,
                         validate=validate.Range(min=0, max=1, min_inclusive=False, max_inclusive=False))
