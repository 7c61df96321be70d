import logging

from flask_restx import Resource

from rangesieve.restplus import api
from rangesieve.schemas.request_schema import SieveRequestSchema
from rangesieve.utils import report_util
from rangesieve.utils.metrics_util import score_table
from rangesieve.utils.policy_util import decision_counts, sieve
from rangesieve.utils.request_util import RequestInvalid, invalid_response, parse_request, request_dataset

log = logging.getLogger(__name__)

ns = api.namespace('sieve', description='Targeted intervention assignment')


@ns.route('/assignments')
class Assignments(Resource):

    def post(self):
        """
        Assigns Context, Deliberation or None to every scored instance of a condition
        :return: cutoffs, per-decision counts and assignments
        """
        try:
            args = parse_request(SieveRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        table = score_table(request_dataset(args), args['condition'])
        cutoffs, assignments = sieve(table, args['fraction'], args['disagreement_fraction'])
        document = report_util.assignment_document(cutoffs, assignments)
        document['counts'] = {decision.value: n for decision, n in decision_counts(assignments).items()}
        return document
