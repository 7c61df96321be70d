from marshmallow import Schema, fields

from rangesieve.models.assignment import Decision
from rangesieve.utils.json_serial import finite_or_none


class InterventionAssignmentSchema(Schema):
    class Meta:
        ordered = True

    instance = fields.String(attribute='instance_id', data_key='instance')
    decision = fields.Enum(Decision, by_value=True)
    ambiguity = fields.Float()
    disagreement = fields.Float()


class SieveCutoffsSchema(Schema):
    class Meta:
        ordered = True

    fraction = fields.Float()
    disagreement_fraction = fields.Float(attribute='effective_disagreement_fraction')
    # +inf sentinel (nothing qualifies) is written as null
    ambiguity_cutoff = fields.Function(lambda c: finite_or_none(c.ambiguity_cutoff))
    disagreement_cutoff = fields.Function(lambda c: finite_or_none(c.disagreement_cutoff))
