import io
import json
import logging
import os
import tempfile

import pandas as pd

from rangesieve import settings
from rangesieve.utils.json_serial import json_serial

log = logging.getLogger(__name__)


def atomic_write_bytes(path, data: bytes):
    """
    Writes to a temporary file in the target directory, then renames over the target
    :param path: destination
    :param data: bytes
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix='.' + os.path.basename(path) + '.', suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'wb') as handle:
            handle.write(data)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    log.debug("Wrote {} bytes to {}".format(len(data), path))


def json_bytes(payload):
    return (json.dumps(payload, indent=2, default=json_serial, allow_nan=False) + "\n").encode('utf-8')


def csv_bytes(records, columns):
    """
    :param records: list of flat dicts
    :param columns: column order
    :return: CSV bytes with floats at FLOAT_FORMAT precision, missing values empty
    """
    frame = pd.DataFrame.from_records(records, columns=columns)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=settings.FLOAT_FORMAT, lineterminator='\n', na_rep='NA')
    return buffer.getvalue().encode('utf-8')


def output_format(path, default='csv'):
    if path is None:
        return default
    return 'json' if path.lower().endswith('.json') else 'csv'


def render(records, columns, fmt, document=None):
    """
    Renders flat records as CSV, or a JSON document (the records themselves when none given)
    """
    if fmt == 'json':
        return json_bytes(document if document is not None else records)
    return csv_bytes(records, columns)
