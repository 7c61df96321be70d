from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

from rangesieve.errors import ConditionNotFound
from rangesieve.models.annotation import Instance, RangeAnnotation, RatingScale


@dataclass(frozen=True)
class ConditionSet:
    condition: str
    annotations: Tuple[RangeAnnotation, ...] = ()

    @cached_property
    def by_instance(self):
        """
        Annotations grouped per instance, preserving the canonical order
        :return: OrderedDict of instance_id -> tuple of RangeAnnotation
        """
        grouped = OrderedDict()
        for annotation in self.annotations:
            grouped.setdefault(annotation.instance_id, []).append(annotation)
        return OrderedDict((k, tuple(v)) for k, v in grouped.items())

    def for_instance(self, instance_id):
        return self.by_instance.get(instance_id, ())

    def __repr__(self):
        return "<ConditionSet(condition={self.condition!r}, annotations={n})>".format(
            self=self, n=len(self.annotations))


@dataclass(frozen=True)
class Dataset:
    """Immutable after ingestion; safe to share between workers"""
    scale: RatingScale
    instances: Tuple[Instance, ...] = ()
    conditions: Tuple[ConditionSet, ...] = ()

    @cached_property
    def instance_ids(self):
        return tuple(i.id for i in self.instances)

    @cached_property
    def condition_names(self):
        return tuple(c.condition for c in self.conditions)

    def has_condition(self, name):
        return name in self.condition_names

    def condition(self, name) -> ConditionSet:
        for condition_set in self.conditions:
            if condition_set.condition == name:
                return condition_set
        raise ConditionNotFound(name, self.condition_names)

    def instance(self, instance_id) -> Optional[Instance]:
        return next((i for i in self.instances if i.id == instance_id), None)

    @property
    def annotation_count(self):
        return sum(len(c.annotations) for c in self.conditions)

    def __repr__(self):
        return "<Dataset(instances={}, conditions={!r})>".format(len(self.instances), self.condition_names)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    condition: Optional[str] = None
    instance_id: Optional[str] = None


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self):
        return len(self.violations) == 0

    def kinds(self):
        return [v.kind for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)
