"""
Counterfactual annotation rounds.

A composed round takes, for every instance of the evaluated population (the instances
scored under the baseline condition), the annotations of one condition: context for
Context-assigned instances, deliberation for Deliberation-assigned ones, baseline
otherwise. Rounds are evaluated by per-instance scores, their means, and percentile
bootstrap CIs that resample instances.
"""
import logging
from collections import OrderedDict

from rangesieve import settings
from rangesieve.errors import CompositionError, MetricError
from rangesieve.models.dataset import Dataset
from rangesieve.models.rounds import ComparisonRow, ComposedRound, RoundSummary, SliceEntry, SliceReport, SweepRow
from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.ingest_util import canonical_key
from rangesieve.utils.metrics_util import score_annotations, score_table, table_means
from rangesieve.utils.policy_util import assign_interventions, derive_cutoffs, quantile_cutoff, selection_size
from rangesieve.utils.stats_util import bootstrap_ci, bootstrap_cis, mean_of, permutation_test

log = logging.getLogger(__name__)

METRICS = ('ambiguity', 'disagreement')
SLICES = (('most_ambiguous', 'ambiguity'), ('most_disagreement', 'disagreement'))


def baseline_table(d: Dataset):
    return score_table(d, settings.CONDITION_BASELINE)


def compose_sources(d: Dataset, sources):
    """
    :param d: Dataset
    :param sources: mapping instance_id -> condition name
    :return: ComposedRound in canonical instance order
    """
    ordered = OrderedDict()
    annotations = []
    for instance_id in sorted(sources, key=canonical_key):
        condition = sources[instance_id]
        if not d.has_condition(condition):
            raise CompositionError("Instance '{}' draws from condition '{}', which the dataset lacks".format(
                instance_id, condition), payload={'instance': instance_id, 'condition': condition})
        taken = d.condition(condition).for_instance(instance_id)
        if len(taken) < settings.MIN_ANNOTATORS:
            raise CompositionError("Instance '{}' has {} annotation(s) under condition '{}'; at least {} needed".format(
                instance_id, len(taken), condition, settings.MIN_ANNOTATORS),
                payload={'instance': instance_id, 'condition': condition})
        ordered[instance_id] = condition
        annotations.extend(taken)
    return ComposedRound(sources=ordered, annotations=tuple(annotations), baseline=settings.CONDITION_BASELINE)


def compose_counterfactual(d: Dataset, assignments):
    """
    Context -> context data, Deliberation -> deliberation data, None -> baseline data
    :param d: Dataset
    :param assignments: list of InterventionAssignment
    :return: ComposedRound
    """
    return compose_sources(d, {a.instance_id: a.decision.condition for a in assignments})


def compose_uniform(d: Dataset, condition):
    """Every instance of the baseline population draws from one condition"""
    d.condition(condition)
    return compose_sources(d, {instance_id: condition for instance_id in baseline_table(d).instance_ids})


def round_scores(composed: ComposedRound):
    """
    :return: ScoreTable of the composed round, one row per instance
    """
    grouped = OrderedDict()
    for annotation in composed.annotations:
        grouped.setdefault(annotation.instance_id, []).append(annotation)
    return score_annotations('composed', {k: tuple(v) for k, v in grouped.items()}, composed.instance_ids)


def _enclose(ci, mean):
    return min(ci[0], mean), max(ci[1], mean)


def summarize_table(table, boot: BootstrapConfig, affected_count):
    if len(table) == 0:
        raise MetricError("Cannot evaluate an empty round")
    mean_ambiguity, mean_disagreement = table_means(table)
    ci_ambiguity, ci_disagreement = bootstrap_cis([table.ambiguities(), table.disagreements()], boot)
    return RoundSummary(mean_ambiguity=mean_ambiguity,
                        mean_disagreement=mean_disagreement,
                        ci_ambiguity=_enclose(ci_ambiguity, mean_ambiguity),
                        ci_disagreement=_enclose(ci_disagreement, mean_disagreement),
                        instance_count=len(table),
                        affected_count=affected_count)


def evaluate_round(composed: ComposedRound, boot: BootstrapConfig):
    """
    Means of per-instance M_a and M_d with paired instance-bootstrap CIs
    :param composed: non-empty ComposedRound
    :param boot: BootstrapConfig
    :return: RoundSummary
    """
    return summarize_table(round_scores(composed), boot, composed.affected_count)


def simulate(d: Dataset, fraction, boot: BootstrapConfig, disagreement_fraction=None):
    """
    Sieve the baseline table at a fraction, compose the round and evaluate it
    :return: (SieveCutoffs, assignments, ComposedRound, RoundSummary)
    """
    table = baseline_table(d)
    cutoffs = derive_cutoffs(table, fraction, disagreement_fraction)
    assignments = assign_interventions(table, cutoffs)
    composed = compose_counterfactual(d, assignments)
    return cutoffs, assignments, composed, evaluate_round(composed, boot)


def uniform_round(d: Dataset, condition, boot: BootstrapConfig):
    """
    Evaluates the round where every instance draws from the named condition
    :return: RoundSummary
    """
    return evaluate_round(compose_uniform(d, condition), boot)


def threshold_sweep(d: Dataset, fractions, boot: BootstrapConfig, disagreement_fractions=None):
    """
    Cutoffs are recomputed from the BASELINE table for every fraction
    :param d: Dataset
    :param fractions: list of fractions in [0, 1]
    :param boot: BootstrapConfig shared by every row
    :param disagreement_fractions: optional per-row disagreement fractions
    :return: list of SweepRow in input order
    """
    table = baseline_table(d)
    rows = []
    for index, fraction in enumerate(fractions):
        disagreement_fraction = disagreement_fractions[index] if disagreement_fractions else None
        cutoffs = derive_cutoffs(table, fraction, disagreement_fraction)
        composed = compose_counterfactual(d, assign_interventions(table, cutoffs))
        summary = evaluate_round(composed, boot)
        log.info("Sweep fraction {}: {} instance(s) affected, mean ambiguity {}, mean disagreement {}".format(
            fraction, summary.affected_count, summary.mean_ambiguity, summary.mean_disagreement))
        rows.append(SweepRow(fraction=fraction, summary=summary))
    return rows


def percent_change(baseline_mean, condition_mean):
    """
    Reduction relative to baseline as a positive percentage; None when the baseline mean is 0
    """
    if baseline_mean == 0:
        return None
    return 100.0 * (baseline_mean - condition_mean) / abs(baseline_mean)


def slice_report_from_tables(tables, slice_fraction, boot: BootstrapConfig,
                             permutation_replicates=settings.PERMUTATION_REPLICATES):
    """
    Most Ambiguous / Most Disagreement slices chosen from the BASELINE table and tracked
    across every condition table
    :param tables: ordered mapping condition -> ScoreTable, including the baseline
    :param slice_fraction: share of top baseline instances per slice
    :param boot: BootstrapConfig for slice-mean CIs; its seed also drives the permutation tests
    :return: (most_ambiguous SliceReport, most_disagreement SliceReport)
    """
    if settings.CONDITION_BASELINE not in tables:
        raise MetricError("Slice analysis needs the '{}' score table".format(settings.CONDITION_BASELINE))
    base = tables[settings.CONDITION_BASELINE]
    size = selection_size(slice_fraction, len(base))
    if size == 0 or len(base) < size:
        raise MetricError("Slice of fraction {} over {} baseline instance(s) is empty".format(
            slice_fraction, len(base)))

    reports = []
    for name, slice_metric in SLICES:
        values = [getattr(row, slice_metric) for row in base.rows]
        cutoff = quantile_cutoff(values, slice_fraction)
        members = tuple(row.instance_id for row in base.rows if getattr(row, slice_metric) >= cutoff)
        baseline_values = {}
        entries = []
        for condition, table in tables.items():
            for metric in METRICS:
                scores = []
                for member in members:
                    row = table.by_instance.get(member)
                    if row is None:
                        raise CompositionError("Slice member '{}' is not scored under condition '{}'".format(
                            member, condition), payload={'instance': member, 'condition': condition})
                    scores.append(getattr(row, metric))
                mean = mean_of(scores)
                if condition == settings.CONDITION_BASELINE:
                    baseline_values[metric] = scores
                    p_value = None
                else:
                    p_value = permutation_test(baseline_values[metric], scores, permutation_replicates, boot.seed)
                base_mean = mean_of(baseline_values[metric])
                entries.append(SliceEntry(metric=metric, condition=condition, mean=mean,
                                          ci=_enclose(bootstrap_ci(scores, boot), mean),
                                          percent_change=percent_change(base_mean, mean),
                                          p_value=p_value))
        log.info("Slice '{}': {} member(s) at cutoff {}".format(name, len(members), cutoff))
        reports.append(SliceReport(name=name, members=members, entries=tuple(entries)))
    return tuple(reports)


def condition_tables(d: Dataset, conditions=None):
    """Score tables for the baseline first, then the remaining conditions"""
    conditions = conditions or (settings.CONDITION_BASELINE, settings.CONDITION_CONTEXT,
                                settings.CONDITION_DELIBERATION)
    return OrderedDict((condition, score_table(d, condition)) for condition in conditions)


def slice_report(d: Dataset, slice_fraction, boot: BootstrapConfig,
                 permutation_replicates=settings.PERMUTATION_REPLICATES):
    """
    Slice analysis over the baseline, context and deliberation conditions
    :return: (most_ambiguous SliceReport, most_disagreement SliceReport)
    """
    return slice_report_from_tables(condition_tables(d), slice_fraction, boot, permutation_replicates)


def compare_interventions(d: Dataset, fraction, boot: BootstrapConfig,
                          permutation_replicates=settings.PERMUTATION_REPLICATES, disagreement_fraction=None):
    """
    Uniform interventions against the targeted round, each tested against baseline
    :return: list of ComparisonRow: baseline, uniform-<condition>..., targeted-<fraction>
    """
    base_round = compose_uniform(d, settings.CONDITION_BASELINE)
    base_table = round_scores(base_round)
    rounds = [('baseline', base_round)]
    for condition in (settings.CONDITION_CONTEXT, settings.CONDITION_DELIBERATION):
        if d.has_condition(condition):
            rounds.append(('uniform-{}'.format(condition), compose_uniform(d, condition)))
        else:
            log.warning("Skipping uniform '{}' round: condition absent".format(condition))
    table = baseline_table(d)
    cutoffs = derive_cutoffs(table, fraction, disagreement_fraction)
    rounds.append(('targeted-{:g}'.format(fraction), compose_counterfactual(d, assign_interventions(table, cutoffs))))

    rows = []
    for label, composed in rounds:
        table = base_table if composed is base_round else round_scores(composed)
        summary = summarize_table(table, boot, composed.affected_count)
        if composed is base_round:
            rows.append(ComparisonRow(label=label, summary=summary, significance_level=settings.SIGNIFICANCE_LEVEL))
            continue
        rows.append(ComparisonRow(
            label=label, summary=summary,
            p_ambiguity=permutation_test(base_table.ambiguities(), table.ambiguities(),
                                         permutation_replicates, boot.seed),
            p_disagreement=permutation_test(base_table.disagreements(), table.disagreements(),
                                            permutation_replicates, boot.seed),
            significance_level=settings.SIGNIFICANCE_LEVEL))
    return rows
