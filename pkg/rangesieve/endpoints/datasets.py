import logging

from flask_restx import Resource

from rangesieve.restplus import api
from rangesieve.schemas.request_schema import DatasetRequestSchema
from rangesieve.utils import report_util
from rangesieve.utils.ingest_util import validate_dataset
from rangesieve.utils.metrics_util import score_table
from rangesieve.utils.request_util import RequestInvalid, invalid_response, parse_request, request_dataset

log = logging.getLogger(__name__)

ns = api.namespace('datasets', description='Dataset validation and scoring')


@ns.route('/validate')
class Validate(Resource):

    def post(self):
        """
        Ingests a dataset document and lists its invariant violations.
        Structural errors (dangling ids, inverted ranges, duplicates) are rejected with 422.
        :return: valid flag, violations, and dataset shape
        """
        try:
            args = parse_request(DatasetRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        d = request_dataset(args)
        report = validate_dataset(d)
        return {
            'valid': report.valid,
            'instances': len(d.instances),
            'conditions': d.condition_names,
            'annotations': d.annotation_count,
            'violations': [{'kind': v.kind, 'condition': v.condition, 'instance': v.instance_id,
                            'message': v.message} for v in report]
        }


@ns.route('/scores')
class Scores(Resource):

    def post(self):
        """
        Per-instance ambiguity and disagreement of one condition (default baseline)
        """
        try:
            args = parse_request(DatasetRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        return report_util.score_document(score_table(request_dataset(args), args['condition']))
