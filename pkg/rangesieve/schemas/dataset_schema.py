from marshmallow import Schema, fields, validate, validates_schema, ValidationError, EXCLUDE


class RatingScaleSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    min = fields.Float(required=True, allow_nan=False)
    max = fields.Float(required=True, allow_nan=False)
    label = fields.String(allow_none=True, load_default=None)


class InstanceSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    id = fields.String(required=True, validate=validate.Length(min=1))
    content = fields.String(load_default="")
    context = fields.String(allow_none=True, load_default=None)
    group = fields.String(allow_none=True, load_default=None)


class AnnotationSchema(Schema):
    """Raw-scale annotation record as it appears on the wire"""
    class Meta:
        unknown = EXCLUDE

    instance = fields.String(required=True, validate=validate.Length(min=1))
    annotator = fields.String(required=True, validate=validate.Length(min=1))
    lower = fields.Float(required=True, allow_nan=False)
    upper = fields.Float(required=True, allow_nan=False)


class ConditionSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    name = fields.String(required=True, validate=validate.Length(min=1))
    annotations = fields.List(fields.Nested(AnnotationSchema), load_default=list)


class DatasetSchema(Schema):
    class Meta:
        unknown = EXCLUDE
        ordered = True

    scale = fields.Nested(RatingScaleSchema, required=True)
    instances = fields.List(fields.Nested(InstanceSchema), required=True)
    conditions = fields.List(fields.Nested(ConditionSchema), load_default=list)


class SidecarSchema(Schema):
    """Scale and instances accompanying a CSV annotations file"""
    class Meta:
        unknown = EXCLUDE

    scale = fields.Nested(RatingScaleSchema, required=True)
    instances = fields.List(fields.Nested(InstanceSchema), required=True)
    conditions = fields.List(fields.String(), load_default=list)

    @validates_schema
    def validate_conditions(self, data, **kwargs):
        if len(set(data['conditions'])) != len(data['conditions']):
            raise ValidationError("Condition names must be unique", 'conditions')
