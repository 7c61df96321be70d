from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from rangesieve.errors import ConfigError

DISTRIBUTION_KINDS = ('uniform', 'beta', 'constant')


@dataclass(frozen=True)
class Distribution:
    """
    Per-instance parameter distribution.
    uniform: params (low, high); beta: params (a, b); constant: params (value,)
    """
    kind: str = 'uniform'
    params: Tuple[float, ...] = (0.0, 1.0)

    def __post_init__(self):
        if self.kind not in DISTRIBUTION_KINDS:
            raise ConfigError("Unknown distribution kind '{}'".format(self.kind))
        expected = 1 if self.kind == 'constant' else 2
        if len(self.params) != expected:
            raise ConfigError("Distribution '{}' takes {} parameter(s), got {}".format(
                self.kind, expected, len(self.params)))
        if self.kind == 'uniform' and self.params[0] > self.params[1]:
            raise ConfigError("Uniform distribution needs low <= high, got {}".format(self.params))
        if self.kind == 'beta' and min(self.params) <= 0:
            raise ConfigError("Beta distribution needs positive shape parameters, got {}".format(self.params))

    @property
    def support(self):
        if self.kind == 'constant':
            return self.params[0], self.params[0]
        if self.kind == 'beta':
            return 0.0, 1.0
        return self.params

    @property
    def mean(self):
        if self.kind == 'constant':
            return self.params[0]
        if self.kind == 'beta':
            a, b = self.params
            return a / (a + b)
        return (self.params[0] + self.params[1]) / 2.0

    def sample(self, rng, size):
        if self.kind == 'constant':
            return np.full(size, float(self.params[0]))
        if self.kind == 'beta':
            return rng.beta(self.params[0], self.params[1], size=size)
        return rng.uniform(self.params[0], self.params[1], size=size)


@dataclass(frozen=True)
class CrowdConfig:
    seed: int = 0
    n_instances: int = 50
    n_annotators: int = 25
    width: Distribution = field(default_factory=lambda: Distribution('uniform', (0.05, 0.35)))
    dispersion: Distribution = field(default_factory=lambda: Distribution('uniform', (0.02, 0.2)))
    bias_spread: float = 1.0
    noise: float = 0.01
    width_jitter: float = 0.25
    center_margin: float = 0.0
    n_groups: int = 5

    def __post_init__(self):
        if self.n_instances < 1:
            raise ConfigError("n_instances must be >= 1, got {}".format(self.n_instances))
        if self.n_annotators < 2:
            raise ConfigError("n_annotators must be >= 2, got {}".format(self.n_annotators))
        low, high = self.width.support
        if low < 0 or high > 1:
            raise ConfigError("Width distribution support must lie within [0, 1], got {}".format((low, high)))
        if self.dispersion.support[0] < 0:
            raise ConfigError("Dispersion distribution must be non-negative")
        for name in ('bias_spread', 'noise', 'width_jitter'):
            if getattr(self, name) < 0:
                raise ConfigError("{} must be non-negative".format(name))
        if not 0 <= self.center_margin <= 0.5:
            raise ConfigError("center_margin must lie in [0, 0.5], got {}".format(self.center_margin))
        if self.n_groups < 1:
            raise ConfigError("n_groups must be >= 1")
        if self.seed < 0:
            raise ConfigError("Seed must be a non-negative integer, got {}".format(self.seed))


@dataclass(frozen=True)
class EffectModel:
    """Multiplicative impact of each intervention on range widths and center dispersion"""
    context_width_factor: float = 0.75
    context_dispersion_factor: float = 1.05
    deliberation_dispersion_factor: float = 0.8
    deliberation_width_factor: float = 1.05

    def __post_init__(self):
        for name in ('context_width_factor', 'context_dispersion_factor',
                     'deliberation_dispersion_factor', 'deliberation_width_factor'):
            if getattr(self, name) <= 0:
                raise ConfigError("{} must be positive, got {}".format(name, getattr(self, name)))
        if self.context_width_factor > 1:
            raise ConfigError("context_width_factor must lie in (0, 1]")
        if self.deliberation_dispersion_factor > 1:
            raise ConfigError("deliberation_dispersion_factor must lie in (0, 1]")

    @classmethod
    def identity(cls):
        return cls(1.0, 1.0, 1.0, 1.0)
