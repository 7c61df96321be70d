from rangesieve.models.annotation import Instance, RangeAnnotation, RatingScale
from rangesieve.models.assignment import Decision, InterventionAssignment, NO_CUTOFF, SieveCutoffs
from rangesieve.models.crowd import CrowdConfig, Distribution, EffectModel
from rangesieve.models.dataset import ConditionSet, Dataset, ValidationReport, Violation
from rangesieve.models.manifest import RunManifest
from rangesieve.models.rounds import ComparisonRow, ComposedRound, RoundSummary, SliceEntry, SliceReport, SweepRow
from rangesieve.models.scores import InstanceScores, ScoreTable
from rangesieve.models.stats import BootstrapConfig
