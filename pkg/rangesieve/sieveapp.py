#!/usr/bin/env python

import logging

from flask import Flask, Blueprint
from flask_cors import CORS

from rangesieve import settings
from rangesieve.endpoints.datasets import ns as datasets_namespace
from rangesieve.endpoints.sieve import ns as sieve_namespace
from rangesieve.endpoints.simulation import ns as simulation_namespace
from rangesieve.endpoints.synthetic import ns as synthetic_namespace
from rangesieve.restplus import api
from rangesieve.utils.logging_util import configure_logging

app = Flask(__name__)
CORS(app)
configure_logging()
log = logging.getLogger(__name__)


@app.route('/')
def index():
    return '<a href="/api/">Range Sieve API</a>'


def configure_app(flask_app):
    flask_app.config['SERVER_NAME'] = settings.FLASK_SERVER_NAME
    flask_app.config['SWAGGER_UI_DOC_EXPANSION'] = settings.RESTPLUS_SWAGGER_UI_DOC_EXPANSION
    flask_app.config['RESTPLUS_VALIDATE'] = settings.RESTPLUS_VALIDATE
    flask_app.config['RESTPLUS_MASK_SWAGGER'] = settings.RESTPLUS_MASK_SWAGGER
    flask_app.config['ERROR_404_HELP'] = settings.RESTPLUS_ERROR_404_HELP


def initialize_app(flask_app):
    blueprint = Blueprint('api', __name__, url_prefix='/api')
    api.init_app(blueprint)
    api.add_namespace(datasets_namespace)
    api.add_namespace(sieve_namespace)
    api.add_namespace(simulation_namespace)
    api.add_namespace(synthetic_namespace)
    flask_app.register_blueprint(blueprint)


initialize_app(app)


def main():
    configure_app(app)
    log.info('>>>>> Starting development server at http://{}/api/ <<<<<'.format(app.config['SERVER_NAME']))
    app.run(debug=settings.FLASK_DEBUG)


if __name__ == "__main__":
    main()
