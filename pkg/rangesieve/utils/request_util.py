import logging

from flask import request
from flask_api import status
from marshmallow import ValidationError
from werkzeug.exceptions import BadRequest

from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.ingest_util import dataset_from_document

log = logging.getLogger(__name__)


class RequestInvalid(Exception):
    def __init__(self, messages):
        Exception.__init__(self, "Invalid request body")
        self.messages = messages


def err_response(msg, code=status.HTTP_400_BAD_REQUEST, errors=None):
    body = {
        'code': code,
        'message': msg
    }
    if errors is not None:
        body['errors'] = errors
    return body, code


def parse_request(schema):
    """
    Loads the JSON body through a marshmallow schema
    :raises RequestInvalid: when the body is not an object or fails validation
    """
    try:
        body = request.get_json(force=True)
    except BadRequest:
        raise RequestInvalid({'_schema': ['Request body is not valid JSON']})
    if not isinstance(body, dict):
        raise RequestInvalid({'_schema': ['Request body must be a JSON object']})
    try:
        return schema.load(body)
    except ValidationError as ex:
        raise RequestInvalid(ex.messages)


def invalid_response(ex: RequestInvalid):
    log.info("Rejected request: {}".format(ex.messages))
    return err_response(str(ex), errors=ex.messages)


def request_dataset(args):
    return dataset_from_document(args['dataset'])


def request_boot(args):
    return BootstrapConfig(seed=args['seed'], replicates=args['reps'], level=args['level'])
