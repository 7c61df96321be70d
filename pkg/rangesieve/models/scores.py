from dataclasses import dataclass
from functools import cached_property
from typing import Tuple


@dataclass(frozen=True)
class InstanceScores:
    instance_id: str
    ambiguity: float
    disagreement: float
    annotator_count: int


@dataclass(frozen=True)
class ScoreTable:
    condition: str
    rows: Tuple[InstanceScores, ...] = ()
    warnings: Tuple[str, ...] = ()

    @cached_property
    def by_instance(self):
        return {row.instance_id: row for row in self.rows}

    @property
    def instance_ids(self):
        return [row.instance_id for row in self.rows]

    def ambiguities(self):
        return [row.ambiguity for row in self.rows]

    def disagreements(self):
        return [row.disagreement for row in self.rows]

    def __len__(self):
        return len(self.rows)
