"""Builders shared by the test cases"""
import json

import numpy as np

from rangesieve.models.annotation import Instance, RangeAnnotation, RatingScale
from rangesieve.models.crowd import CrowdConfig
from rangesieve.models.dataset import ConditionSet, Dataset
from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.crowd_util import generate_dataset
from rangesieve.utils.ingest_util import annotation_key, canonical_key

UNIT = RatingScale(min=0.0, max=1.0)

# small replicate counts keep Monte Carlo cases fast
FAST_BOOT = BootstrapConfig(seed=7, replicates=200)


def annotations(instance_id, ranges, prefix='a'):
    return tuple(RangeAnnotation(instance_id=instance_id, annotator_id="{}{}".format(prefix, k + 1),
                                 lower=float(lower), upper=float(upper))
                 for k, (lower, upper) in enumerate(ranges))


def make_dataset(conditions, instance_ids=None, scale=UNIT):
    """
    :param conditions: mapping condition -> {instance_id: [(lower, upper), ...]}, unit scale
    :param instance_ids: declared instances, default every instance mentioned
    """
    ids = instance_ids or {i for per_instance in conditions.values() for i in per_instance}
    sets = []
    for name in sorted(conditions, key=canonical_key):
        flat = [a for instance_id, ranges in conditions[name].items() for a in annotations(instance_id, ranges)]
        sets.append(ConditionSet(condition=name, annotations=tuple(sorted(flat, key=annotation_key))))
    return Dataset(scale=scale, instances=tuple(Instance(id=i) for i in sorted(ids, key=canonical_key)),
                   conditions=tuple(sets))


def random_ranges(rng, n):
    """n ranges with endpoints from sorted uniform draws"""
    draws = np.sort(rng.uniform(0.0, 1.0, size=(n, 2)), axis=1)
    return [(float(lo), float(hi)) for lo, hi in draws]


def synthetic_dataset(seed=3, n_instances=20, n_annotators=6):
    return generate_dataset(CrowdConfig(seed=seed, n_instances=n_instances, n_annotators=n_annotators))


def dataset_document(conditions, instance_ids=None, scale=(0, 10)):
    """Raw-unit dataset JSON document; ranges are given in scale units"""
    ids = instance_ids or sorted({i for per_instance in conditions.values() for i in per_instance},
                                 key=canonical_key)
    return {
        'scale': {'min': scale[0], 'max': scale[1], 'label': 'test'},
        'instances': [{'id': i, 'content': "item {}".format(i)} for i in ids],
        'conditions': [{
            'name': name,
            'annotations': [{'instance': instance_id, 'annotator': "a{}".format(k + 1), 'lower': lo, 'upper': hi}
                            for instance_id, ranges in per_instance.items()
                            for k, (lo, hi) in enumerate(ranges)]
        } for name, per_instance in conditions.items()]
    }


def post_json(client, path, body):
    """POSTs a JSON body to the API and returns (status, parsed response)"""
    response = client.post('/api' + path, data=json.dumps(body), content_type='application/json')
    return response.status_code, response.get_json()
