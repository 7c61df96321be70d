class SieveError(Exception):
    status_code = 500
    exit_code = 1

    def __init__(self, message, status_code=None, payload=None):
        Exception.__init__(self, message)
        self.message = message
        if status_code is not None:
            self.status_code = status_code
        self.payload = payload

    def to_dict(self):
        rv = dict(self.payload or ())
        rv['message'] = self.message
        return rv


class DatasetError(SieveError):
    """Dataset or record violates a data-model invariant"""
    status_code = 422


class ParseError(DatasetError):
    """Input could not be parsed; payload carries the line or record position"""
    status_code = 400

    def __init__(self, message, line=None, record=None, payload=None):
        payload = dict(payload or ())
        if line is not None:
            payload['line'] = line
        if record is not None:
            payload['record'] = record
        DatasetError.__init__(self, message, payload=payload)
        self.line = line
        self.record = record


class ConditionNotFound(SieveError):
    status_code = 404

    def __init__(self, condition, available=()):
        SieveError.__init__(self, "Unknown condition '{}'".format(condition),
                            payload={'condition': condition, 'available': list(available)})
        self.condition = condition


class MetricError(SieveError):
    """Metric preconditions not met (empty input, missing peers)"""
    status_code = 422


class CompositionError(SieveError):
    """Counterfactual round cannot be composed from the available conditions"""
    status_code = 422


class ConfigError(SieveError):
    status_code = 422


class UsageError(SieveError):
    status_code = 400
    exit_code = 2
