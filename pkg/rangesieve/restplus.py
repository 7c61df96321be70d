import logging

from flask_api import status
from flask_restx import Api

from rangesieve import settings
from rangesieve.errors import SieveError

log = logging.getLogger(__name__)

api = Api(version=settings.VERSION,
          title='Range Sieve API',
          description='Ambiguity and disagreement scoring, intervention sieving and counterfactual rounds '
                      'for range annotations.')


@api.errorhandler
def default_error_handler(e):
    message = 'An unhandled exception occurred.'
    log.exception(message)

    if not settings.FLASK_DEBUG:
        return {'message': message}, status.HTTP_500_INTERNAL_SERVER_ERROR


@api.errorhandler(SieveError)
def handle_sieve_error(error):
    log.warning("{}: {}".format(type(error).__name__, error.message))
    return error.to_dict(), error.status_code
