"""
Seeded generative model of annotator populations and intervention effects.

Each instance x has a latent true value t_x ~ U[0, 1], a width scale w_x and a
dispersion sigma_x. Annotator i of a pool carries a perspective offset b_i. Their
range for x is centred on clamp(t_x + sigma_x * b_i + eps) with width w_x times a
log-normal jitter, then clipped to [0, 1]; clipping shrinks ranges near the scale ends.

Interventions scale widths and dispersions multiplicatively (see EffectModel). Every
draw comes from a substream keyed on (seed, stream, ...), so conditions and instances
can be generated in any order with identical results.
"""
import logging

import numpy as np

from rangesieve import settings
from rangesieve.errors import ConfigError
from rangesieve.models.annotation import Instance, RangeAnnotation, RatingScale
from rangesieve.models.assignment import Decision
from rangesieve.models.crowd import CrowdConfig, EffectModel
from rangesieve.models.dataset import ConditionSet, Dataset
from rangesieve.models.stats import BootstrapConfig
from rangesieve.utils.metrics_util import score_annotations
from rangesieve.utils.policy_util import assign_interventions, derive_cutoffs
from rangesieve.utils.simulation_util import summarize_table
from rangesieve.utils.stats_util import substream

log = logging.getLogger(__name__)

STREAM_LATENT = 10
STREAM_BIAS = 11
STREAM_RANGES = 12
STREAM_ITERATE_BIAS = 13
STREAM_ITERATE_RANGES = 14


def instance_ids(cfg: CrowdConfig):
    digits = len(str(cfg.n_instances))
    return ["i{:0{}d}".format(x + 1, digits) for x in range(cfg.n_instances)]


def annotator_ids(prefix, cfg: CrowdConfig):
    digits = len(str(cfg.n_annotators))
    return ["{}-a{:0{}d}".format(prefix, i + 1, digits) for i in range(cfg.n_annotators)]


def draw_latents(cfg: CrowdConfig):
    """
    :return: (truth, width, dispersion) arrays, one entry per instance
    """
    rng = substream(cfg.seed, STREAM_LATENT)
    truth = rng.uniform(0.0, 1.0, size=cfg.n_instances)
    width = np.clip(np.asarray(cfg.width.sample(rng, cfg.n_instances), dtype=float), 0.0, 1.0)
    dispersion = np.clip(np.asarray(cfg.dispersion.sample(rng, cfg.n_instances), dtype=float), 0.0, None)
    return truth, width, dispersion


def draw_biases(rng, cfg: CrowdConfig):
    return rng.normal(0.0, cfg.bias_spread, size=cfg.n_annotators)


def draw_ranges(rng, cfg: CrowdConfig, truth, width, dispersion, biases):
    """
    One pool's ranges for one instance
    :return: (lowers, uppers) arrays within [0, 1]
    """
    n = len(biases)
    noise = rng.normal(0.0, cfg.noise, size=n)
    jitter = np.exp(rng.normal(0.0, cfg.width_jitter, size=n))
    widths = np.minimum(width * jitter, 1.0)
    centers = np.clip(truth + dispersion * biases + noise, cfg.center_margin, 1.0 - cfg.center_margin)
    lowers = np.clip(centers - widths / 2.0, 0.0, 1.0)
    uppers = np.clip(centers + widths / 2.0, 0.0, 1.0)
    return lowers, uppers


def _annotations(instance_id, annotators, lowers, uppers):
    return tuple(RangeAnnotation(instance_id=instance_id, annotator_id=annotator,
                                 lower=float(lower), upper=float(upper))
                 for annotator, lower, upper in zip(annotators, lowers, uppers))


def condition_factors(fx: EffectModel):
    """(condition, width factor, dispersion factor) per generated condition, in stream order"""
    return [
        (settings.CONDITION_BASELINE, 1.0, 1.0),
        (settings.CONDITION_CONTEXT, fx.context_width_factor, fx.context_dispersion_factor),
        (settings.CONDITION_DELIBERATION, fx.deliberation_width_factor, fx.deliberation_dispersion_factor),
    ]


def generate_dataset(cfg: CrowdConfig, fx: EffectModel = None):
    """
    Baseline, context and deliberation conditions, each with a fresh annotator pool
    :param cfg: CrowdConfig
    :param fx: EffectModel, defaults to EffectModel()
    :return: Dataset on the unit scale
    """
    if not isinstance(cfg, CrowdConfig):
        raise ConfigError("generate_dataset expects a CrowdConfig")
    fx = fx or EffectModel()
    ids = instance_ids(cfg)
    truth, width, dispersion = draw_latents(cfg)

    conditions = []
    for index, (condition, width_factor, dispersion_factor) in enumerate(condition_factors(fx)):
        biases = draw_biases(substream(cfg.seed, STREAM_BIAS, index), cfg)
        annotators = annotator_ids(condition, cfg)
        annotations = []
        for x, instance_id in enumerate(ids):
            rng = substream(cfg.seed, STREAM_RANGES, index, x)
            lowers, uppers = draw_ranges(rng, cfg, truth[x], min(width[x] * width_factor, 1.0),
                                         dispersion[x] * dispersion_factor, biases)
            annotations.extend(_annotations(instance_id, annotators, lowers, uppers))
        conditions.append(ConditionSet(condition=condition, annotations=tuple(annotations)))

    instances = tuple(Instance(id=instance_id, content="synthetic item {}".format(instance_id),
                               group="g{}".format(1 + x * cfg.n_groups // cfg.n_instances))
                      for x, instance_id in enumerate(ids))
    dataset = Dataset(scale=RatingScale(min=0.0, max=1.0, label='synthetic unit scale'),
                      instances=instances, conditions=tuple(conditions))
    log.info("Generated {!r} from seed {}".format(dataset, cfg.seed))
    return dataset


def iterate_sieve(cfg: CrowdConfig, fx: EffectModel, fraction, rounds, boot: BootstrapConfig,
                  tolerance=None, disagreement_fraction=None):
    """
    Repeated sieving on synthetic data. Round 1 scores the baseline; every later round
    assigns interventions from the current scores, regenerates only the assigned
    instances with their effects applied cumulatively, and rescores.
    :param cfg: CrowdConfig
    :param fx: EffectModel
    :param fraction: sieve fraction applied every round
    :param rounds: maximum trajectory length, >= 1
    :param boot: BootstrapConfig for each round's summary
    :param tolerance: stop once both mean metrics fall below it; None disables early stopping
    :return: list of RoundSummary; affected_count is the number of instances regenerated for that round
    """
    if rounds < 1:
        raise ConfigError("iterate_sieve needs rounds >= 1, got {}".format(rounds))
    fx = fx or EffectModel()
    ids = instance_ids(cfg)
    truth, width, dispersion = draw_latents(cfg)
    width_factor = np.ones(cfg.n_instances)
    dispersion_factor = np.ones(cfg.n_instances)

    biases = draw_biases(substream(cfg.seed, STREAM_BIAS, 0), cfg)
    annotators = annotator_ids(settings.CONDITION_BASELINE, cfg)
    current = {}
    for x, instance_id in enumerate(ids):
        lowers, uppers = draw_ranges(substream(cfg.seed, STREAM_RANGES, 0, x), cfg, truth[x], width[x],
                                     dispersion[x], biases)
        current[instance_id] = _annotations(instance_id, annotators, lowers, uppers)

    trajectory = []
    affected = 0
    for round_number in range(1, rounds + 1):
        table = score_annotations('round-{}'.format(round_number), current, ids)
        summary = summarize_table(table, boot, affected)
        trajectory.append(summary)
        log.info("Round {}: mean ambiguity {}, mean disagreement {}, {} regenerated".format(
            round_number, summary.mean_ambiguity, summary.mean_disagreement, affected))
        if tolerance is not None and summary.mean_ambiguity < tolerance and summary.mean_disagreement < tolerance:
            log.info("Both means below tolerance {}; stopping after round {}".format(tolerance, round_number))
            break
        if round_number == rounds:
            break

        assignments = assign_interventions(table, derive_cutoffs(table, fraction, disagreement_fraction))
        biases = draw_biases(substream(cfg.seed, STREAM_ITERATE_BIAS, round_number), cfg)
        annotators = annotator_ids("round{}".format(round_number + 1), cfg)
        affected = 0
        for assignment in assignments:
            if assignment.decision is Decision.NONE:
                continue
            x = ids.index(assignment.instance_id)
            if assignment.decision is Decision.CONTEXT:
                width_factor[x] *= fx.context_width_factor
                dispersion_factor[x] *= fx.context_dispersion_factor
            else:
                width_factor[x] *= fx.deliberation_width_factor
                dispersion_factor[x] *= fx.deliberation_dispersion_factor
            rng = substream(cfg.seed, STREAM_ITERATE_RANGES, round_number, x)
            lowers, uppers = draw_ranges(rng, cfg, truth[x], min(width[x] * width_factor[x], 1.0),
                                         dispersion[x] * dispersion_factor[x], biases)
            current[assignment.instance_id] = _annotations(assignment.instance_id, annotators, lowers, uppers)
            affected += 1
    return trajectory
