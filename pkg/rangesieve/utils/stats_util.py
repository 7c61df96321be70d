"""
Seeded resampling statistics: percentile bootstrap confidence intervals of the mean
and two-sided two-sample permutation tests on the difference of means.

Replicates are drawn in fixed-size blocks; block ``k`` always uses the stream
``default_rng([seed, stream, k])``, so results do not depend on how blocks are
scheduled across workers.
"""
import itertools
import logging
import math

import numpy as np

from rangesieve import settings
from rangesieve.errors import MetricError
from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.workers import map_ordered

log = logging.getLogger(__name__)

STREAM_BOOTSTRAP = 1
STREAM_PERMUTATION = 2


def substream(seed, *keys):
    return np.random.default_rng([int(seed)] + [int(k) for k in keys])


def mean_of(values):
    """
    Compensated mean, clipped into [min, max] so a constant sample returns itself exactly
    :param values: non-empty sequence of floats
    :return: float
    """
    values = [float(v) for v in values]
    if not values:
        raise MetricError("Cannot take the mean of an empty sample")
    return min(max(math.fsum(values) / len(values), min(values)), max(values))


def _blocks(replicates):
    size = max(1, settings.RESAMPLE_BLOCK_SIZE)
    return [(index, min(size, replicates - start)) for index, start in enumerate(range(0, replicates, size))]


def bootstrap_means(values, cfg: BootstrapConfig):
    """
    Replicate means from resampling rows with replacement.
    :param values: array of shape (n,) or (n, k); rows are resampled jointly across columns
    :param cfg: BootstrapConfig
    :return: array of shape (replicates,) or (replicates, k)
    """
    data = np.asarray(values, dtype=float)
    n = data.shape[0]
    if n == 0:
        raise MetricError("Cannot bootstrap an empty sample")
    low, high = data.min(axis=0), data.max(axis=0)

    def run_block(block):
        index, size = block
        rng = substream(cfg.seed, STREAM_BOOTSTRAP, index)
        rows = rng.integers(0, n, size=(size, n))
        return data[rows].mean(axis=1)

    means = np.concatenate(map_ordered(run_block, _blocks(cfg.replicates)), axis=0)
    # keeps each replicate mean inside the sample range despite rounding
    return np.clip(means, low, high)


def percentile_interval(means, level):
    alpha = (1.0 - level) / 2.0
    lo = np.quantile(means, alpha, axis=0, method='lower')
    hi = np.quantile(means, 1.0 - alpha, axis=0, method='higher')
    return lo, hi


def bootstrap_ci(values, cfg: BootstrapConfig):
    """
    Percentile bootstrap CI of the mean
    :param values: non-empty list of floats
    :param cfg: BootstrapConfig
    :return: (lo, hi) with lo <= hi, both order statistics of the replicate means
    """
    if len(values) == 0:
        raise MetricError("bootstrap_ci requires a non-empty sample")
    lo, hi = percentile_interval(bootstrap_means(values, cfg), cfg.level)
    return float(lo), float(hi)


def bootstrap_cis(columns, cfg: BootstrapConfig):
    """
    Paired percentile CIs: every column is resampled with the same row indices
    :param columns: list of equally long value lists
    :return: list of (lo, hi), one per column
    """
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    lo, hi = percentile_interval(bootstrap_means(data, cfg), cfg.level)
    return [(float(l), float(h)) for l, h in zip(lo, hi)]


def _split_statistic(small_sums, large_sums, m, rest):
    return np.abs(small_sums / m - large_sums / rest)


def permutation_test(a, b, replicates=settings.PERMUTATION_REPLICATES, seed=0, exact=False):
    """
    Two-sided permutation test for a difference of means.

    The pooled sample is sorted and the statistic compares the smaller group size
    against the rest, so swapping ``a`` and ``b`` gives the same p. p is
    (1 + #{|t*| >= |t|}) / (1 + replicates) over ``replicates`` random label permutations.
    With ``exact=True`` and no more distinct splits than ``replicates``, every split is
    enumerated instead and p is the share of splits at least as extreme (the observed
    split included).

    :param a: non-empty list of floats
    :param b: non-empty list of floats
    :param replicates: number of random label permutations
    :param seed: non-negative int
    :param exact: enumerate all splits when there are at most ``replicates`` of them
    :return: p in (0, 1]
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise MetricError("permutation_test requires two non-empty samples")
    if replicates < 1:
        raise MetricError("permutation_test requires replicates >= 1")

    small, large = (a, b) if a.size <= b.size else (b, a)
    m, rest = small.size, large.size
    pooled = np.sort(np.concatenate([a, b]))
    total = pooled.sum()
    observed = float(_split_statistic(small.sum(), large.sum(), m, rest))
    threshold = observed - 1e-12 * max(1.0, observed)

    splits = math.comb(m + rest, m)
    if exact and splits <= replicates:
        combos = np.array(list(itertools.combinations(range(m + rest), m)), dtype=np.intp)
        sums = pooled[combos].sum(axis=1)
        stats = _split_statistic(sums, total - sums, m, rest)
        p = np.count_nonzero(stats >= threshold) / float(splits)
        log.debug("Exact permutation test over {} splits: p={}".format(splits, p))
        return float(p)

    def run_block(block):
        index, size = block
        rng = substream(seed, STREAM_PERMUTATION, index)
        order = rng.random((size, m + rest)).argsort(axis=1)
        sums = pooled[order[:, :m]].sum(axis=1)
        return int(np.count_nonzero(_split_statistic(sums, total - sums, m, rest) >= threshold))

    extreme = sum(map_ordered(run_block, _blocks(replicates)))
    return (1.0 + extreme) / (1.0 + replicates)
