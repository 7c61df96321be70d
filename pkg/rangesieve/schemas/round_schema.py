from marshmallow import Schema, fields


class RoundSummarySchema(Schema):
    class Meta:
        ordered = True

    mean_ambiguity = fields.Float()
    ambiguity_ci_lo = fields.Function(lambda s: s.ci_ambiguity[0])
    ambiguity_ci_hi = fields.Function(lambda s: s.ci_ambiguity[1])
    mean_disagreement = fields.Float()
    disagreement_ci_lo = fields.Function(lambda s: s.ci_disagreement[0])
    disagreement_ci_hi = fields.Function(lambda s: s.ci_disagreement[1])
    instance_count = fields.Integer()
    affected_count = fields.Integer()


class SweepRowSchema(Schema):
    class Meta:
        ordered = True

    fraction = fields.Float()
    mean_ambiguity = fields.Float(attribute='summary.mean_ambiguity')
    ambiguity_ci_lo = fields.Function(lambda r: r.summary.ci_ambiguity[0])
    ambiguity_ci_hi = fields.Function(lambda r: r.summary.ci_ambiguity[1])
    mean_disagreement = fields.Float(attribute='summary.mean_disagreement')
    disagreement_ci_lo = fields.Function(lambda r: r.summary.ci_disagreement[0])
    disagreement_ci_hi = fields.Function(lambda r: r.summary.ci_disagreement[1])
    affected_count = fields.Integer(attribute='summary.affected_count')


class SliceEntrySchema(Schema):
    class Meta:
        ordered = True

    metric = fields.String()
    condition = fields.String()
    mean = fields.Float()
    ci_lo = fields.Function(lambda e: e.ci[0])
    ci_hi = fields.Function(lambda e: e.ci[1])
    percent_change = fields.Float(allow_none=True)
    p_value = fields.Float(allow_none=True)


class SliceReportSchema(Schema):
    class Meta:
        ordered = True

    name = fields.String()
    members = fields.List(fields.String())
    entries = fields.List(fields.Nested(SliceEntrySchema))


class ComparisonRowSchema(Schema):
    class Meta:
        ordered = True

    label = fields.String()
    mean_ambiguity = fields.Float(attribute='summary.mean_ambiguity')
    ambiguity_ci_lo = fields.Function(lambda r: r.summary.ci_ambiguity[0])
    ambiguity_ci_hi = fields.Function(lambda r: r.summary.ci_ambiguity[1])
    p_ambiguity = fields.Float(allow_none=True)
    significant_ambiguity = fields.Boolean()
    mean_disagreement = fields.Float(attribute='summary.mean_disagreement')
    disagreement_ci_lo = fields.Function(lambda r: r.summary.ci_disagreement[0])
    disagreement_ci_hi = fields.Function(lambda r: r.summary.ci_disagreement[1])
    p_disagreement = fields.Float(allow_none=True)
    significant_disagreement = fields.Boolean()
    affected_count = fields.Integer(attribute='summary.affected_count')
    significance_level = fields.Float(allow_none=True)
