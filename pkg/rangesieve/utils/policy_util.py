"""
Quantile cutoffs and intervention assignment with ambiguity priority.

With n scores and k = ceil(fraction * n), the cutoff is the k-th largest score; every
score >= cutoff qualifies, so ties at the cutoff can push the selection past k.
"""
import logging
import math
from fractions import Fraction

from rangesieve.errors import MetricError
from rangesieve.models.assignment import Decision, InterventionAssignment, NO_CUTOFF, SieveCutoffs
from rangesieve.models.scores import ScoreTable

log = logging.getLogger(__name__)


def selection_size(fraction, n):
    """k = ceil(fraction * n) on the decimal value of fraction, so 0.07 * 100 gives 7"""
    if not 0.0 <= fraction <= 1.0:
        raise MetricError("Fraction must lie in [0, 1], got {}".format(fraction))
    if fraction == 0.0:
        return 0
    return min(n, math.ceil(Fraction(str(float(fraction))) * n))


def quantile_cutoff(scores, fraction):
    """
    :param scores: non-empty list of floats
    :param fraction: share of top scores to select, in [0, 1]
    :return: the k-th largest score, or NO_CUTOFF (+inf) when k = 0
    """
    scores = list(scores)
    if not scores:
        raise MetricError("quantile_cutoff requires a non-empty score list")
    k = selection_size(fraction, len(scores))
    if k == 0:
        return NO_CUTOFF
    return sorted(scores, reverse=True)[k - 1]


def derive_cutoffs(table: ScoreTable, fraction, disagreement_fraction=None):
    """
    Cutoffs over ALL rows of the table, one per metric
    :param table: ScoreTable (normally the baseline one)
    :param fraction: ambiguity fraction; also the disagreement fraction unless given
    :return: SieveCutoffs
    """
    disagreement_share = fraction if disagreement_fraction is None else disagreement_fraction
    if len(table) == 0:
        selection_size(fraction, 0)
        selection_size(disagreement_share, 0)
        return SieveCutoffs(fraction=fraction, disagreement_fraction=disagreement_fraction)
    cutoffs = SieveCutoffs(fraction=fraction,
                           ambiguity_cutoff=quantile_cutoff(table.ambiguities(), fraction),
                           disagreement_cutoff=quantile_cutoff(table.disagreements(), disagreement_share),
                           disagreement_fraction=disagreement_fraction)
    log.info("Cutoffs for '{}' at fraction {}: ambiguity >= {}, disagreement >= {}".format(
        table.condition, fraction, cutoffs.ambiguity_cutoff, cutoffs.disagreement_cutoff))
    return cutoffs


def decide(ambiguity, disagreement, cutoffs: SieveCutoffs):
    """Ambiguity is checked first; disagreement only for instances below the ambiguity cutoff"""
    if ambiguity >= cutoffs.ambiguity_cutoff:
        return Decision.CONTEXT
    if disagreement >= cutoffs.disagreement_cutoff:
        return Decision.DELIBERATION
    return Decision.NONE


def assign_interventions(table: ScoreTable, cutoffs: SieveCutoffs):
    """
    :param table: ScoreTable
    :param cutoffs: SieveCutoffs derived from the same table or supplied explicitly
    :return: list of InterventionAssignment, one per row, in table order
    """
    return [InterventionAssignment(instance_id=row.instance_id,
                                   decision=decide(row.ambiguity, row.disagreement, cutoffs),
                                   ambiguity=row.ambiguity,
                                   disagreement=row.disagreement) for row in table.rows]


def sieve(table: ScoreTable, fraction, disagreement_fraction=None):
    """
    :return: (SieveCutoffs, list of InterventionAssignment)
    """
    cutoffs = derive_cutoffs(table, fraction, disagreement_fraction)
    assignments = assign_interventions(table, cutoffs)
    counts = decision_counts(assignments)
    log.info("Sieve at fraction {}: {} context, {} deliberation, {} none".format(
        fraction, counts[Decision.CONTEXT], counts[Decision.DELIBERATION], counts[Decision.NONE]))
    return cutoffs, assignments


def decision_counts(assignments):
    counts = {decision: 0 for decision in Decision}
    for assignment in assignments:
        counts[assignment.decision] += 1
    return counts

