import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from rangesieve import settings

# Sentinel cutoff: no score qualifies
NO_CUTOFF = math.inf


class Decision(Enum):
    CONTEXT = 'context'
    DELIBERATION = 'deliberation'
    NONE = 'none'

    @property
    def condition(self):
        """Condition whose annotations replace the instance's baseline ones"""
        if self is Decision.CONTEXT:
            return settings.CONDITION_CONTEXT
        if self is Decision.DELIBERATION:
            return settings.CONDITION_DELIBERATION
        return settings.CONDITION_BASELINE


@dataclass(frozen=True)
class SieveCutoffs:
    """
    fraction = 0 leaves the ambiguity cutoff at NO_CUTOFF. The disagreement cutoff is NO_CUTOFF too,
    unless a separate disagreement_fraction > 0 was given: then it is the quantile at that fraction.
    """
    fraction: float
    ambiguity_cutoff: float = NO_CUTOFF
    disagreement_cutoff: float = NO_CUTOFF
    disagreement_fraction: Optional[float] = None

    @property
    def effective_disagreement_fraction(self):
        return self.fraction if self.disagreement_fraction is None else self.disagreement_fraction


@dataclass(frozen=True)
class InterventionAssignment:
    instance_id: str
    decision: Decision
    ambiguity: float
    disagreement: float
