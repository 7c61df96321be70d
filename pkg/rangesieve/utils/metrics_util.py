"""
Per-instance uncertainty decomposition for range annotations.

Ambiguity M_a is the mean range width. Disagreement M_d is the negated mean of each
annotator's agreement, where agreement sums, over every peer, the share of the
annotator's range covered by the peer's range minus the peer's width (the overlap
expected from a randomly placed range of that width). Agreement is a sum over peers,
not an average, so |M_d| grows with the number of annotators (at most N - 1).
"""
import logging
import math

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from rangesieve import settings
from rangesieve.errors import MetricError
from rangesieve.models.dataset import Dataset
from rangesieve.models.scores import InstanceScores, ScoreTable
from rangesieve.utils.ingest_util import canonical_key
from rangesieve.utils.stats_util import mean_of

log = logging.getLogger(__name__)


def _bounds(interval):
    if hasattr(interval, 'lower'):
        return float(interval.lower), float(interval.upper)
    lower, upper = interval
    return float(lower), float(upper)


def overlap_ratio(a, b):
    """
    Share of interval a covered by interval b.
    Zero-width a counts as covered (1.0) when its point lies inside b, else 0.0.
    :param a: RangeAnnotation or (lower, upper)
    :param b: RangeAnnotation or (lower, upper)
    :return: float in [0, 1]
    """
    lower, upper = _bounds(a)
    other_lower, other_upper = _bounds(b)
    width = upper - lower
    if width == 0:
        return 1.0 if other_lower <= lower <= other_upper else 0.0
    return max(min(upper, other_upper) - max(lower, other_lower), 0.0) / width


def _single_instance(annotations, minimum):
    annotations = list(annotations)
    if len(annotations) < minimum:
        raise MetricError("Expected at least {} annotation(s) for one instance, got {}".format(
            minimum, len(annotations)))
    instance_ids = {a.instance_id for a in annotations}
    if len(instance_ids) > 1:
        raise MetricError("Annotations span several instances: {}".format(sorted(instance_ids)))
    return annotations


def instance_ambiguity(annotations):
    """
    M_a: mean range width across annotators
    :param annotations: >= 1 RangeAnnotation of one instance
    :return: float in [0, 1]
    """
    annotations = _single_instance(annotations, 1)
    return mean_of([a.upper - a.lower for a in annotations])


def overlap_matrix(lowers, uppers):
    """
    Pairwise overlap ratios; entry [i, j] is overlap_ratio(range i, range j)
    :param lowers: array of n lower bounds
    :param uppers: array of n upper bounds
    :return: (n, n) array
    """
    lowers = np.asarray(lowers, dtype=float)
    uppers = np.asarray(uppers, dtype=float)
    widths = uppers - lowers
    covered = np.clip(np.minimum.outer(uppers, uppers) - np.maximum.outer(lowers, lowers), 0.0, None)
    degenerate = widths == 0
    ratios = np.divide(covered, widths[:, None], out=np.zeros_like(covered), where=~degenerate[:, None])
    if degenerate.any():
        contains = (lowers[None, :] <= lowers[:, None]) & (lowers[:, None] <= uppers[None, :])
        ratios[degenerate] = contains[degenerate].astype(float)
    return ratios


def agreement_vector(lowers, uppers):
    """
    Agreement of every annotator with all of their peers
    :return: list of n floats, each in [-(n - 1), n - 1]
    """
    ratios = overlap_matrix(lowers, uppers)
    widths = np.asarray(uppers, dtype=float) - np.asarray(lowers, dtype=float)
    terms = ratios - widths[None, :]
    n = len(widths)
    return [math.fsum(terms[i, j] for j in range(n) if j != i) for i in range(n)]


def annotator_agreement(annotator_id, annotations):
    """
    Agreement(x, i): sum over peers j of overlap_ratio(i, j) - width(j).
    Not symmetric between a pair of annotators.
    :param annotator_id: annotator i
    :param annotations: >= 2 RangeAnnotation of one instance, including i's
    :return: float
    """
    annotations = _single_instance(annotations, 1)
    index = next((k for k, a in enumerate(annotations) if a.annotator_id == annotator_id), None)
    if index is None:
        raise MetricError("Annotator '{}' has no annotation for this instance".format(annotator_id))
    if len(annotations) < 2:
        raise MetricError("Annotator '{}' has no peers to agree with".format(annotator_id))
    return agreement_vector([a.lower for a in annotations], [a.upper for a in annotations])[index]


def instance_disagreement(annotations):
    """
    M_d: negative mean agreement over all annotators
    :param annotations: >= 2 RangeAnnotation of one instance
    :return: float
    """
    annotations = _single_instance(annotations, 2)
    agreements = agreement_vector([a.lower for a in annotations], [a.upper for a in annotations])
    return -mean_of(agreements)


@cached(LRUCache(maxsize=settings.SCORE_CACHE_SIZE), key=lambda annotations: hashkey(tuple(annotations)))
def score_instance(annotations):
    """
    Both scores for one instance; memoised on the annotation tuple
    :param annotations: >= 2 RangeAnnotation of one instance
    :return: InstanceScores
    """
    annotations = tuple(annotations)
    return InstanceScores(instance_id=annotations[0].instance_id if annotations else None,
                          ambiguity=instance_ambiguity(annotations),
                          disagreement=instance_disagreement(annotations),
                          annotator_count=len(annotations))


def score_annotations(condition, grouped, instance_ids):
    """
    Builds a ScoreTable from annotations grouped per instance
    :param condition: name recorded on the table
    :param grouped: mapping instance_id -> annotations
    :param instance_ids: instances expected in the table
    :return: ScoreTable with instances lacking peers excluded and listed in warnings
    """
    rows = []
    warnings = []
    for instance_id in sorted(instance_ids, key=canonical_key):
        annotations = grouped.get(instance_id, ())
        if len(annotations) < settings.MIN_ANNOTATORS:
            warnings.append("Instance '{}' has {} annotation(s) under '{}'; excluded".format(
                instance_id, len(annotations), condition))
            continue
        rows.append(score_instance(annotations))
    if warnings:
        log.warning("{} instance(s) excluded from the '{}' score table".format(len(warnings), condition))
    return ScoreTable(condition=condition, rows=tuple(rows), warnings=tuple(warnings))


def score_table(d: Dataset, condition):
    """
    One InstanceScores row per instance with enough annotations under the condition
    :param d: Dataset
    :param condition: condition name
    :return: ScoreTable ordered by instance id
    """
    condition_set = d.condition(condition)
    return score_annotations(condition, condition_set.by_instance, d.instance_ids)


def table_means(table: ScoreTable):
    """
    :return: (mean ambiguity, mean disagreement) over the table's rows
    """
    return mean_of(table.ambiguities()), mean_of(table.disagreements())
