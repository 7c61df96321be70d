import math
from datetime import date, datetime
from enum import Enum

import numpy as np


def json_serial(obj):
    """JSON serializer for objects not serializable by default json code"""

    if isinstance(obj, (datetime, date)):
        return obj.isoformat()
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return finite_or_none(float(obj))
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    raise TypeError("Type %s not serializable" % type(obj))


def finite_or_none(value):
    """Non-finite floats (cutoff sentinels, undefined percentages) become null"""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None
