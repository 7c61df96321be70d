import hashlib
import json
import logging
from datetime import datetime, timezone

from rangesieve import settings
from rangesieve.models.manifest import RunManifest
from rangesieve.schemas.manifest_schema import RunManifestSchema
from rangesieve.utils.output_util import atomic_write_bytes, json_bytes

log = logging.getLogger(__name__)


def file_digest(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b''):
            digest.update(chunk)
    return "sha256:" + digest.hexdigest()


def build_manifest(command, parameters, inputs, seed, argv, outputs=None):
    """
    :param command: subcommand name
    :param parameters: fully resolved parameters
    :param inputs: input file paths to digest
    :param seed: run seed or None
    :param argv: argument vector that reproduces the run
    :param outputs: mapping of output path -> digest
    :return: RunManifest
    """
    return RunManifest(command=command,
                       parameters=parameters,
                       input_digests={path: file_digest(path) for path in inputs},
                       seed=seed,
                       version=settings.VERSION,
                       timestamp=datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
                       argv=list(argv),
                       outputs=dict(outputs or {}))


def manifest_path(output_path):
    return output_path + settings.MANIFEST_SUFFIX


def write_manifest(manifest: RunManifest, output_path):
    path = manifest_path(output_path)
    atomic_write_bytes(path, json_bytes(RunManifestSchema().dump(manifest)))
    log.info("Wrote run manifest {}".format(path))
    return path


def read_manifest(path):
    with open(path, 'rb') as handle:
        return RunManifestSchema().load(json.loads(handle.read().decode('utf-8')))


def stale_inputs(manifest: RunManifest):
    """Inputs whose current digest no longer matches the recorded one"""
    stale = []
    for path, digest in manifest.input_digests.items():
        try:
            if file_digest(path) != digest:
                stale.append(path)
        except OSError:
            stale.append(path)
    return stale
