import logging
import logging.config
import os

from rangesieve import settings

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(level=None):
    """
    Configures logging from LOGGING_CONF, or a stderr handler when the file is absent
    :param level: optional level name overriding the package logger level
    """
    if os.path.exists(settings.LOGGING_CONF):
        logging.config.fileConfig(settings.LOGGING_CONF, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    if level:
        logging.getLogger('rangesieve').setLevel(level.upper())
