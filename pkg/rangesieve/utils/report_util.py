"""
Flat, plot-ready records for every output kind, plus loaders for the `report` command.
"""
import json
import logging

import pandas as pd

from rangesieve import settings
from rangesieve.errors import ParseError
from rangesieve.models.scores import InstanceScores, ScoreTable
from rangesieve.schemas.assignment_schema import InterventionAssignmentSchema, SieveCutoffsSchema
from rangesieve.schemas.round_schema import (ComparisonRowSchema, RoundSummarySchema, SliceReportSchema,
                                             SweepRowSchema)
from rangesieve.schemas.scores_schema import InstanceScoresSchema, ScoreTableSchema
from rangesieve.utils.ingest_util import canonical_key
from rangesieve.utils.json_serial import finite_or_none

log = logging.getLogger(__name__)

SCORE_COLUMNS = ['instance', 'ambiguity', 'disagreement', 'annotators']
ASSIGNMENT_COLUMNS = ['instance', 'decision', 'ambiguity', 'disagreement']
SUMMARY_COLUMNS = ['mean_ambiguity', 'ambiguity_ci_lo', 'ambiguity_ci_hi', 'mean_disagreement',
                   'disagreement_ci_lo', 'disagreement_ci_hi', 'instance_count', 'affected_count']
SWEEP_COLUMNS = ['fraction', 'mean_ambiguity', 'ambiguity_ci_lo', 'ambiguity_ci_hi', 'mean_disagreement',
                 'disagreement_ci_lo', 'disagreement_ci_hi', 'affected_count']
ITERATION_COLUMNS = ['round'] + SUMMARY_COLUMNS
SLICE_COLUMNS = ['slice', 'metric', 'condition', 'mean', 'ci_lo', 'ci_hi', 'percent_change', 'p_value',
                 'significant']
COMPARISON_COLUMNS = ['label', 'mean_ambiguity', 'ambiguity_ci_lo', 'ambiguity_ci_hi', 'p_ambiguity',
                      'significant_ambiguity', 'mean_disagreement', 'disagreement_ci_lo', 'disagreement_ci_hi',
                      'p_disagreement', 'significant_disagreement', 'affected_count', 'significance_level']
SWEEP_LONG_COLUMNS = ['series', 'fraction', 'metric', 'mean', 'ci_lo', 'ci_hi', 'affected_count']


def score_records(table: ScoreTable):
    return InstanceScoresSchema(many=True).dump(table.rows)


def score_document(table: ScoreTable):
    return ScoreTableSchema().dump(table)


def assignment_records(assignments):
    return InterventionAssignmentSchema(many=True).dump(assignments)


def cutoffs_record(cutoffs):
    return SieveCutoffsSchema().dump(cutoffs)


def assignment_document(cutoffs, assignments):
    return {'cutoffs': cutoffs_record(cutoffs), 'assignments': assignment_records(assignments)}


def summary_records(summaries):
    return RoundSummarySchema(many=True).dump(summaries)


def iteration_records(trajectory):
    return [dict(round=index, **record) for index, record in enumerate(summary_records(trajectory), start=1)]


def sweep_records(rows):
    return SweepRowSchema(many=True).dump(rows)


def slice_records(reports):
    records = []
    for report in reports:
        for entry in report.entries:
            records.append({
                'slice': report.name, 'metric': entry.metric, 'condition': entry.condition,
                'mean': entry.mean, 'ci_lo': entry.ci[0], 'ci_hi': entry.ci[1],
                'percent_change': finite_or_none(entry.percent_change), 'p_value': entry.p_value,
                'significant': None if entry.p_value is None else entry.p_value < settings.SIGNIFICANCE_LEVEL,
            })
    return records


def slice_document(reports):
    return {'significance_level': settings.SIGNIFICANCE_LEVEL,
            'slices': SliceReportSchema(many=True).dump(reports)}


def comparison_records(rows):
    return ComparisonRowSchema(many=True).dump(rows)


def _read_frame(path, required):
    try:
        if path.lower().endswith('.json'):
            with open(path, 'rb') as handle:
                document = json.loads(handle.read().decode('utf-8'))
            records = document.get('rows', document) if isinstance(document, dict) else document
            frame = pd.DataFrame.from_records(records)
        else:
            frame = pd.read_csv(path, keep_default_na=True, dtype={'instance': str}, float_precision='round_trip')
    except (ValueError, pd.errors.ParserError) as ex:
        raise ParseError("Cannot read '{}': {}".format(path, ex))
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise ParseError("'{}' lacks column(s): {}".format(path, ", ".join(missing)), line=1)
    return frame


def load_score_table(path, condition):
    """
    Reads a score table written by `score` (CSV or JSON)
    :return: ScoreTable ordered by instance id
    """
    frame = _read_frame(path, SCORE_COLUMNS)
    rows = [InstanceScores(instance_id=str(r.instance), ambiguity=float(r.ambiguity),
                           disagreement=float(r.disagreement), annotator_count=int(r.annotators))
            for r in frame[SCORE_COLUMNS].itertuples(index=False)]
    rows.sort(key=lambda row: canonical_key(row.instance_id))
    return ScoreTable(condition=condition, rows=tuple(rows))


def sweep_long_records(paths_by_series):
    """
    Long-format sweep panel: one row per (series, fraction, metric)
    :param paths_by_series: ordered mapping series name -> sweep file
    """
    records = []
    for series, path in paths_by_series.items():
        frame = _read_frame(path, SWEEP_COLUMNS)
        for row in frame.sort_values('fraction', kind='mergesort').itertuples(index=False):
            for metric in ('ambiguity', 'disagreement'):
                records.append({'series': series, 'fraction': float(row.fraction), 'metric': metric,
                                'mean': float(getattr(row, 'mean_' + metric)),
                                'ci_lo': float(getattr(row, metric + '_ci_lo')),
                                'ci_hi': float(getattr(row, metric + '_ci_hi')),
                                'affected_count': int(row.affected_count)})
    return records
