import os

from rangesieve import __version__


def str2bool(v):
  return v.lower() in ("y", "yes", "true", "t", "1")


def str2floats(v):
  return [float(f) for f in v.split(',') if f.strip() != '']


VERSION = os.getenv('VERSION', __version__)

# Flask settings
FLASK_SERVER_NAME = os.getenv('FLASK_SERVER_NAME', 'localhost:5000')
FLASK_DEBUG = str2bool(os.getenv('FLASK_DEBUG', 'False'))  # Do not use debug mode in production

# Flask-Restplus settings
RESTPLUS_SWAGGER_UI_DOC_EXPANSION = os.getenv('RESTPLUS_SWAGGER_UI_DOC_EXPANSION', 'list')
RESTPLUS_VALIDATE = str2bool(os.getenv('RESTPLUS_VALIDATE', 'True'))
RESTPLUS_MASK_SWAGGER = str2bool(os.getenv('RESTPLUS_MASK_SWAGGER', 'False'))
RESTPLUS_ERROR_404_HELP = str2bool(os.getenv('RESTPLUS_ERROR_404_HELP', 'False'))

# Logging
LOGGING_CONF = os.getenv('LOGGING_CONF', os.path.normpath(os.path.join(os.path.dirname(__file__), '../logging.conf')))

# Worker parallelism, 0 = one worker per cpu
SIEVE_THREADS = int(os.getenv('JUDGMENT_SIEVE_THREADS', '0'))

# Conditions
CONDITION_BASELINE = os.getenv('CONDITION_BASELINE', 'baseline')
CONDITION_CONTEXT = os.getenv('CONDITION_CONTEXT', 'context')
CONDITION_DELIBERATION = os.getenv('CONDITION_DELIBERATION', 'deliberation')
MIN_ANNOTATORS = int(os.getenv('MIN_ANNOTATORS', '2'))

# Sieve
DEFAULT_FRACTION = float(os.getenv('DEFAULT_FRACTION', '0.1'))
SLICE_FRACTION = float(os.getenv('SLICE_FRACTION', '0.1'))
SWEEP_FRACTIONS = str2floats(os.getenv('SWEEP_FRACTIONS', '0,0.05,0.1,0.15,0.2,0.25'))

# Resampling statistics
BOOTSTRAP_REPLICATES = int(os.getenv('BOOTSTRAP_REPLICATES', '10000'))
CONFIDENCE_LEVEL = float(os.getenv('CONFIDENCE_LEVEL', '0.95'))
PERMUTATION_REPLICATES = int(os.getenv('PERMUTATION_REPLICATES', '10000'))
SIGNIFICANCE_LEVEL = float(os.getenv('SIGNIFICANCE_LEVEL', '0.01'))
# Replicates are drawn in fixed-size blocks, each with its own (seed, block) stream
RESAMPLE_BLOCK_SIZE = int(os.getenv('RESAMPLE_BLOCK_SIZE', '1000'))

# Caches
SCORE_CACHE_SIZE = int(os.getenv('SCORE_CACHE_SIZE', '65536'))

# Output
FLOAT_FORMAT = os.getenv('FLOAT_FORMAT', '%.17g')
MANIFEST_SUFFIX = os.getenv('MANIFEST_SUFFIX', '.manifest.json')
