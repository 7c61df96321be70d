from dataclasses import dataclass

from rangesieve import settings
from rangesieve.errors import ConfigError


@dataclass(frozen=True)
class BootstrapConfig:
    seed: int
    replicates: int = settings.BOOTSTRAP_REPLICATES
    level: float = settings.CONFIDENCE_LEVEL

    def __post_init__(self):
        if self.replicates < 1:
            raise ConfigError("Bootstrap replicates must be >= 1, got {}".format(self.replicates))
        if not 0 < self.level < 1:
            raise ConfigError("Confidence level must lie in (0, 1), got {}".format(self.level))
        if self.seed < 0:
            raise ConfigError("Seed must be a non-negative integer, got {}".format(self.seed))
