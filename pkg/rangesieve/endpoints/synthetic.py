import dataclasses
import logging

from flask_restx import Resource

from rangesieve.models.crowd import CrowdConfig, EffectModel
from rangesieve.models.stats import BootstrapConfig
from rangesieve.restplus import api
from rangesieve.schemas.request_schema import IterateRequestSchema, SynthRequestSchema
from rangesieve.utils import report_util
from rangesieve.utils.crowd_util import generate_dataset, iterate_sieve
from rangesieve.utils.ingest_util import dataset_document
from rangesieve.utils.request_util import RequestInvalid, invalid_response, parse_request

log = logging.getLogger(__name__)

ns = api.namespace('synthetic', description='Synthetic crowds with declared intervention effects')


def _configs(args):
    crowd = dataclasses.replace(args['crowd'] or CrowdConfig(), seed=args['seed'])
    return crowd, args['effects'] or EffectModel()


@ns.route('/datasets')
class Datasets(Resource):

    def post(self):
        """
        Generates baseline, context and deliberation conditions from a seeded crowd model
        :return: dataset document on the unit scale
        """
        try:
            args = parse_request(SynthRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        return dataset_document(generate_dataset(*_configs(args)))


@ns.route('/iterations')
class Iterations(Resource):

    def post(self):
        """
        Repeated sieving: one summary per round, round 1 being the untouched baseline
        """
        try:
            args = parse_request(IterateRequestSchema())
        except RequestInvalid as ex:
            return invalid_response(ex)
        crowd, effects = _configs(args)
        boot = BootstrapConfig(seed=args['seed'], replicates=args['reps'], level=args['level'])
        trajectory = iterate_sieve(crowd, effects, args['fraction'], args['rounds'], boot, args['tolerance'],
                                   args['disagreement_fraction'])
        return {'rounds': report_util.iteration_records(trajectory)}
