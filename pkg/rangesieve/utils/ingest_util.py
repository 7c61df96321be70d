"""
Dataset ingestion, scale normalization, validation and serialization.

JSON layout::

    {"scale": {"min": r, "max": r, "label": s|null},
     "instances": [{"id": s, "content": s, "context": s|null, "group": s|null}],
     "conditions": [{"name": s, "annotations": [{"instance": s, "annotator": s, "lower": r, "upper": r}]}]}

CSV layout: an annotations file with header ``condition,instance,annotator,lower,upper``
plus a sidecar JSON holding ``scale``, ``instances`` and optionally the declared
``conditions``. Lower/upper are raw scale units in both formats.
"""
import io
import json
import logging
import math
import os
import re
from collections import Counter

import pandas as pd
from marshmallow import ValidationError
from natsort import natsort_keygen

from rangesieve.errors import DatasetError, ParseError
from rangesieve.models.annotation import Instance, RangeAnnotation, RatingScale
from rangesieve.models.dataset import ConditionSet, Dataset, ValidationReport, Violation
from rangesieve.schemas.dataset_schema import DatasetSchema, SidecarSchema
from rangesieve.utils.output_util import atomic_write_bytes, json_bytes, csv_bytes
from rangesieve import settings

log = logging.getLogger(__name__)

CSV_COLUMNS = ['condition', 'instance', 'annotator', 'lower', 'upper']
SIDECAR_SUFFIX = '.meta.json'

_natural = natsort_keygen()


def canonical_key(identifier):
    """Natural order, raw string breaks ties such as 'a01' vs 'a1'"""
    return _natural(identifier), identifier


def annotation_key(annotation):
    return canonical_key(annotation.instance_id), canonical_key(annotation.annotator_id)


def normalize_rating(value, scale: RatingScale):
    """
    Maps a raw rating linearly onto [0, 1], clamping values outside the scale
    :param value: raw rating
    :param scale: RatingScale with max > min
    :return: float in [0, 1]
    """
    if not scale.max > scale.min:
        raise DatasetError("Degenerate rating scale: max ({}) must exceed min ({})".format(scale.max, scale.min))
    if value <= scale.min:
        return 0.0
    if value >= scale.max:
        return 1.0
    return min(max((value - scale.min) / (scale.max - scale.min), 0.0), 1.0)


def denormalize_rating(value, scale: RatingScale):
    return scale.min + value * (scale.max - scale.min)


def _flatten_messages(messages, prefix=''):
    if isinstance(messages, dict):
        for key, value in messages.items():
            path = "{}[{}]".format(prefix, key) if isinstance(key, int) else (
                "{}.{}".format(prefix, key) if prefix else str(key))
            yield from _flatten_messages(value, path)
    elif isinstance(messages, list) and messages and not isinstance(messages[0], (dict, list)):
        yield prefix, "; ".join(str(m) for m in messages)
    elif isinstance(messages, list):
        for value in messages:
            yield from _flatten_messages(value, prefix)
    else:
        yield prefix, str(messages)


def _schema_error(ex: ValidationError, source):
    path, message = next(_flatten_messages(ex.messages), ('', str(ex)))
    return ParseError("Malformed {} at {}: {}".format(source, path or 'document', message), record=path)


def _read_bytes(source):
    if isinstance(source, (bytes, bytearray)):
        return bytes(source)
    if isinstance(source, str):
        return source.encode('utf-8')
    data = source.read()
    return data.encode('utf-8') if isinstance(data, str) else data


def _load_json(data, what):
    try:
        return json.loads(data.decode('utf-8'))
    except UnicodeDecodeError as ex:
        raise ParseError("{} is not valid UTF-8: {}".format(what, ex), record=ex.start)
    except json.JSONDecodeError as ex:
        raise ParseError("Malformed {} JSON at line {} column {}: {}".format(what, ex.lineno, ex.colno, ex.msg),
                         line=ex.lineno)


def _build_dataset(scale_data, instance_data, condition_records):
    """
    :param scale_data: dict with min, max, label
    :param instance_data: list of instance dicts
    :param condition_records: list of (condition name, [(record label, raw record dict)])
    :return: Dataset
    """
    scale = RatingScale(min=scale_data['min'], max=scale_data['max'], label=scale_data.get('label'))
    if not scale.max > scale.min:
        raise DatasetError("Degenerate rating scale: max ({}) must exceed min ({})".format(scale.max, scale.min))

    ids = Counter(i['id'] for i in instance_data)
    duplicates = sorted((k for k, n in ids.items() if n > 1), key=canonical_key)
    if duplicates:
        raise DatasetError("Duplicate instance id(s): {}".format(", ".join(duplicates)))
    names = Counter(name for name, _ in condition_records)
    duplicates = sorted((k for k, n in names.items() if n > 1), key=canonical_key)
    if duplicates:
        raise DatasetError("Duplicate condition(s): {}".format(", ".join(duplicates)))

    clamped = 0
    conditions = []
    for name, records in condition_records:
        seen = set()
        annotations = []
        for label, record in records:
            described = "{} of condition '{}' (instance='{}', annotator='{}')".format(
                label, name, record['instance'], record['annotator'])
            if record['instance'] not in ids:
                raise DatasetError("{} references unknown instance '{}'".format(described, record['instance']),
                                   payload={'record': label, 'condition': name})
            if not (math.isfinite(record['lower']) and math.isfinite(record['upper'])):
                raise DatasetError("{} has a non-finite bound".format(described),
                                   payload={'record': label, 'condition': name})
            if record['upper'] < record['lower']:
                raise DatasetError("{}: upper {} < lower {}".format(described, record['upper'], record['lower']),
                                   payload={'record': label, 'condition': name})
            pair = (record['instance'], record['annotator'])
            if pair in seen:
                raise DatasetError("{} duplicates an earlier annotation".format(described),
                                   payload={'record': label, 'condition': name})
            seen.add(pair)
            if record['lower'] < scale.min or record['upper'] > scale.max:
                clamped += 1
            raw_lower = min(max(record['lower'], scale.min), scale.max)
            raw_upper = min(max(record['upper'], scale.min), scale.max)
            annotations.append(RangeAnnotation(instance_id=record['instance'],
                                               annotator_id=record['annotator'],
                                               lower=normalize_rating(raw_lower, scale),
                                               upper=normalize_rating(raw_upper, scale),
                                               raw_lower=raw_lower, raw_upper=raw_upper))
        annotations.sort(key=annotation_key)
        conditions.append(ConditionSet(condition=name, annotations=tuple(annotations)))
    if clamped:
        log.warning("Clamped {} annotation(s) with bounds outside the scale [{}, {}]".format(
            clamped, scale.min, scale.max))

    instances = sorted((Instance(id=i['id'], content=i.get('content') or "", context=i.get('context'),
                                 group=i.get('group')) for i in instance_data), key=lambda i: canonical_key(i.id))
    conditions.sort(key=lambda c: canonical_key(c.condition))
    dataset = Dataset(scale=scale, instances=tuple(instances), conditions=tuple(conditions))

    report = validate_dataset(dataset)
    for violation in report:
        log.warning("Ingested dataset violation ({}): {}".format(violation.kind, violation.message))
    log.info("Ingested {!r} with {} annotation(s)".format(dataset, dataset.annotation_count))
    return dataset


def dataset_from_document(document):
    """
    :param document: parsed dataset JSON (scale, instances, conditions)
    :return: Dataset
    """
    try:
        loaded = DatasetSchema().load(document)
    except ValidationError as ex:
        raise _schema_error(ex, 'dataset')
    condition_records = [
        (c['name'], [("record {}".format(k), r) for k, r in enumerate(c['annotations'])])
        for c in loaded['conditions']
    ]
    return _build_dataset(loaded['scale'], loaded['instances'], condition_records)


def _ingest_json(data):
    return dataset_from_document(_load_json(data, 'dataset'))


_LINE_PATTERN = re.compile(r'line (\d+)')


def _ingest_csv(data, sidecar):
    if sidecar is None:
        raise ParseError("CSV datasets need a sidecar JSON with the scale and instances")
    document = _load_json(_read_bytes(sidecar), 'sidecar')
    try:
        meta = SidecarSchema().load(document)
    except ValidationError as ex:
        raise _schema_error(ex, 'sidecar')

    try:
        frame = pd.read_csv(io.BytesIO(data), dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise ParseError("Annotations CSV is empty; expected header {}".format(",".join(CSV_COLUMNS)), line=1)
    except pd.errors.ParserError as ex:
        match = _LINE_PATTERN.search(str(ex))
        raise ParseError("Malformed annotations CSV: {}".format(ex), line=int(match.group(1)) if match else None)
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ParseError("Annotations CSV header lacks column(s): {}".format(", ".join(missing)), line=1)

    grouped = {name: [] for name in meta['conditions']}
    for position, row in enumerate(frame[CSV_COLUMNS].itertuples(index=False), start=2):
        condition, instance, annotator, lower, upper = (str(v).strip() for v in row)
        if not condition or not instance or not annotator:
            raise ParseError("Line {}: condition, instance and annotator are required".format(position),
                             line=position)
        try:
            record = {'instance': instance, 'annotator': annotator, 'lower': float(lower), 'upper': float(upper)}
        except ValueError:
            raise ParseError("Line {}: lower/upper must be numbers, got '{}', '{}'".format(position, lower, upper),
                             line=position)
        grouped.setdefault(condition, []).append(("line {}".format(position), record))
    return _build_dataset(meta['scale'], meta['instances'], list(grouped.items()))


def ingest_dataset(source, format='json', sidecar=None):
    """
    Parses, normalizes and canonicalizes a dataset
    :param source: bytes, str or binary stream
    :param format: 'json' or 'csv'
    :param sidecar: scale/instances JSON (bytes, str or stream), required for csv
    :return: Dataset
    """
    data = _read_bytes(source)
    if format == 'json':
        return _ingest_json(data)
    if format == 'csv':
        return _ingest_csv(data, sidecar)
    raise ParseError("Unsupported dataset format '{}'; use json or csv".format(format))


def sidecar_path(path):
    root, _ = os.path.splitext(path)
    return root + SIDECAR_SUFFIX


def load_dataset(path, sidecar=None):
    """
    Reads a dataset file, choosing the format from the extension
    :param path: .json or .csv file
    :param sidecar: sidecar path for csv, defaults to <stem>.meta.json
    :return: Dataset
    """
    fmt = 'csv' if path.lower().endswith('.csv') else 'json'
    with open(path, 'rb') as handle:
        data = handle.read()
    if fmt == 'csv':
        sidecar = sidecar or sidecar_path(path)
        if not os.path.exists(sidecar):
            raise ParseError("Sidecar '{}' for '{}' not found".format(sidecar, path))
        with open(sidecar, 'rb') as handle:
            return ingest_dataset(data, 'csv', handle.read())
    return ingest_dataset(data, 'json')


def validate_dataset(d: Dataset):
    """
    Enumerates every invariant violation; violations are data, not failures
    :param d: Dataset
    :return: ValidationReport, empty when valid
    """
    violations = []
    if not d.scale.max > d.scale.min:
        violations.append(Violation('degenerate scale', "Scale max ({}) must exceed min ({})".format(
            d.scale.max, d.scale.min)))

    counts = Counter(i.id for i in d.instances)
    for instance_id in sorted((k for k, n in counts.items() if n > 1), key=canonical_key):
        violations.append(Violation('duplicate instance', "Instance id '{}' appears {} times".format(
            instance_id, counts[instance_id]), instance_id=instance_id))

    names = Counter(d.condition_names)
    for name in sorted((k for k, n in names.items() if n > 1), key=canonical_key):
        violations.append(Violation('duplicate condition', "Condition '{}' is declared {} times".format(
            name, names[name]), condition=name))

    for condition_set in d.conditions:
        name = condition_set.condition
        pairs = Counter((a.instance_id, a.annotator_id) for a in condition_set.annotations)
        for (instance_id, annotator_id), n in pairs.items():
            if n > 1:
                violations.append(Violation('duplicate annotation', "Annotator '{}' rated instance '{}' {} times "
                                            "under '{}'".format(annotator_id, instance_id, n, name),
                                            condition=name, instance_id=instance_id))
        for annotation in condition_set.annotations:
            if annotation.instance_id not in counts:
                violations.append(Violation('dangling instance', "Annotation by '{}' under '{}' references unknown "
                                            "instance '{}'".format(annotation.annotator_id, name,
                                                                   annotation.instance_id),
                                            condition=name, instance_id=annotation.instance_id))
            if not 0.0 <= annotation.lower <= annotation.upper <= 1.0:
                violations.append(Violation('invalid range', "Annotation by '{}' on '{}' under '{}' is not a unit "
                                            "interval: [{}, {}]".format(annotation.annotator_id,
                                                                        annotation.instance_id, name,
                                                                        annotation.lower, annotation.upper),
                                            condition=name, instance_id=annotation.instance_id))
        for instance_id, annotations in condition_set.by_instance.items():
            if len(annotations) < settings.MIN_ANNOTATORS:
                violations.append(Violation('insufficient annotators', "Instance '{}' has {} annotator(s) under '{}'; "
                                            "at least {} required".format(instance_id, len(annotations), name,
                                                                          settings.MIN_ANNOTATORS),
                                            condition=name, instance_id=instance_id))
    return ValidationReport(violations=tuple(violations))


def _raw_bound(raw, value, scale: RatingScale):
    return denormalize_rating(value, scale) if raw is None else raw


def dataset_document(d: Dataset):
    """Raw-unit JSON document of a dataset; ingested annotations keep the exact raw bounds they were read with"""
    payload = {
        'scale': d.scale,
        'instances': list(d.instances),
        'conditions': [{
            'name': c.condition,
            'annotations': [{'instance': a.instance_id, 'annotator': a.annotator_id,
                             'lower': _raw_bound(a.raw_lower, a.lower, d.scale),
                             'upper': _raw_bound(a.raw_upper, a.upper, d.scale)} for a in c.annotations]
        } for c in d.conditions]
    }
    return DatasetSchema().dump(payload)


def serialize_dataset(d: Dataset, format='json'):
    """
    :return: bytes for json; (annotations csv bytes, sidecar json bytes) for csv
    """
    document = dataset_document(d)
    if format == 'json':
        return json_bytes(document)
    records = [dict(condition=c['name'], **a) for c in document['conditions'] for a in c['annotations']]
    sidecar = {'scale': document['scale'], 'instances': document['instances'],
               'conditions': [c['name'] for c in document['conditions']]}
    return csv_bytes(records, CSV_COLUMNS), json_bytes(sidecar)


def write_dataset(d: Dataset, path):
    """Writes json, or csv plus its <stem>.meta.json sidecar"""
    if path.lower().endswith('.csv'):
        data, sidecar = serialize_dataset(d, 'csv')
        atomic_write_bytes(path, data)
        atomic_write_bytes(sidecar_path(path), sidecar)
        return [path, sidecar_path(path)]
    atomic_write_bytes(path, serialize_dataset(d, 'json'))
    return [path]
