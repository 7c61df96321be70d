from marshmallow import Schema, fields, post_load

from rangesieve.models.manifest import RunManifest


class RunManifestSchema(Schema):
    class Meta:
        ordered = True

    command = fields.String(required=True)
    parameters = fields.Dict(keys=fields.String(), required=True)
    input_digests = fields.Dict(keys=fields.String(), values=fields.String(), load_default=dict)
    seed = fields.Integer(allow_none=True, load_default=None)
    version = fields.String(required=True)
    timestamp = fields.String(required=True)
    argv = fields.List(fields.String(), load_default=list)
    outputs = fields.Dict(keys=fields.String(), values=fields.String(), load_default=dict)

    @post_load
    def make_manifest(self, data, **kwargs):
        return RunManifest(**data)
