from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from rangesieve.models.annotation import RangeAnnotation


@dataclass(frozen=True)
class ComposedRound:
    """Counterfactual round: each instance draws its annotations from one condition"""
    sources: Mapping[str, str]
    annotations: Tuple[RangeAnnotation, ...]
    baseline: str = 'baseline'

    @property
    def instance_ids(self):
        return list(self.sources.keys())

    @property
    def affected_count(self):
        return sum(1 for condition in self.sources.values() if condition != self.baseline)


@dataclass(frozen=True)
class RoundSummary:
    mean_ambiguity: float
    mean_disagreement: float
    ci_ambiguity: Tuple[float, float]
    ci_disagreement: Tuple[float, float]
    instance_count: int
    affected_count: int


@dataclass(frozen=True)
class SweepRow:
    fraction: float
    summary: RoundSummary


@dataclass(frozen=True)
class SliceEntry:
    """One (metric, condition) cell of a slice panel"""
    metric: str
    condition: str
    mean: float
    ci: Tuple[float, float]
    percent_change: Optional[float]
    p_value: Optional[float]


@dataclass(frozen=True)
class SliceReport:
    name: str
    members: Tuple[str, ...]
    entries: Tuple[SliceEntry, ...]

    def entry(self, metric, condition):
        return next(e for e in self.entries if e.metric == metric and e.condition == condition)

    def means(self, condition):
        return {e.metric: e.mean for e in self.entries if e.condition == condition}

    def percent_change(self, metric, condition):
        return self.entry(metric, condition).percent_change


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    summary: RoundSummary
    p_ambiguity: Optional[float] = None
    p_disagreement: Optional[float] = None
    significance_level: Optional[float] = None

    @property
    def significant_ambiguity(self):
        return self.p_ambiguity is not None and self.p_ambiguity < self.significance_level

    @property
    def significant_disagreement(self):
        return self.p_disagreement is not None and self.p_disagreement < self.significance_level
