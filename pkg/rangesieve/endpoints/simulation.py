import logging

from flask_restx import Resource

from rangesieve import settings
from rangesieve.restplus import api
from rangesieve.schemas.request_schema import (CompareRequestSchema, SimulateRequestSchema, SliceRequestSchema,
                                               SweepRequestSchema, UniformRequestSchema)
from rangesieve.utils import report_util
from rangesieve.utils.request_util import (RequestInvalid, invalid_response, parse_request, request_boot,
                                           request_dataset)
from rangesieve.utils.simulation_util import (compare_interventions, simulate, slice_report, threshold_sweep,
                                              uniform_round)

log = logging.getLogger(__name__)

ns = api.namespace('simulation', description='Counterfactual annotation rounds')


@ns.route('/simulate')
class Simulate(Resource):

    def post(self):
        """
        Sieves the baseline at a fraction and evaluates the composed round
        :return: cutoffs, assignments and the round summary with bootstrap CIs
        """
        try:
            args = parse_request(SimulateRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        cutoffs, assignments, _, summary = simulate(request_dataset(args), args['fraction'], request_boot(args),
                                                    args['disagreement_fraction'])
        document = report_util.assignment_document(cutoffs, assignments)
        document['summary'] = report_util.summary_records([summary])[0]
        return document


@ns.route('/uniform')
class Uniform(Resource):

    def post(self):
        """
        Evaluates the round where every instance draws from one condition
        """
        try:
            args = parse_request(UniformRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        summary = uniform_round(request_dataset(args), args['condition'], request_boot(args))
        return {'condition': args['condition'], 'summary': report_util.summary_records([summary])[0]}


@ns.route('/sweep')
class Sweep(Resource):

    def post(self):
        """
        Targeted rounds at several fractions, cutoffs always taken from the baseline
        """
        try:
            args = parse_request(SweepRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        rows = threshold_sweep(request_dataset(args), args['fractions'], request_boot(args),
                               args['disagreement_fractions'])
        return {'rows': report_util.sweep_records(rows)}


@ns.route('/slices')
class Slices(Resource):

    def post(self):
        """
        Most Ambiguous and Most Disagreement slices tracked across conditions
        """
        try:
            args = parse_request(SliceRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        reports = slice_report(request_dataset(args), args['slice_fraction'], request_boot(args), args['perm_reps'])
        return report_util.slice_document(reports)


@ns.route('/compare')
class Compare(Resource):

    def post(self):
        """
        Uniform context and deliberation rounds against the targeted round, each tested against baseline
        """
        try:
            args = parse_request(CompareRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        rows = compare_interventions(request_dataset(args), args['fraction'], request_boot(args), args['perm_reps'],
                                     args['disagreement_fraction'])
        return {'significance_level': settings.SIGNIFICANCE_LEVEL, 'rows': report_util.comparison_records(rows)}
