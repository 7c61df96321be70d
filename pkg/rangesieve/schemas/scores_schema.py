from marshmallow import Schema, fields


class InstanceScoresSchema(Schema):
    class Meta:
        ordered = True

    instance = fields.String(attribute='instance_id', data_key='instance')
    ambiguity = fields.Float()
    disagreement = fields.Float()
    annotators = fields.Integer(attribute='annotator_count', data_key='annotators')


class ScoreTableSchema(Schema):
    class Meta:
        ordered = True

    condition = fields.String()
    rows = fields.List(fields.Nested(InstanceScoresSchema))
    warnings = fields.List(fields.String())
